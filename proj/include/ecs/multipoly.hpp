#pragma once
/**
 * @file multipoly.hpp
 * @brief Sparse multivariate polynomials over an exact coefficient ring.
 *
 * Terms are kept in a map ordered graded-lexicographically, so iteration
 * order (and every serialization derived from it) is deterministic.  The
 * zero coefficient is never stored.
 *
 * The coefficient ring C must provide: default construction (= zero),
 * ==, +, *, unary -, and construction from long.
 */
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ecs {

using Exponents = std::vector<unsigned>;

inline unsigned exponents_degree(const Exponents& e) {
    unsigned d = 0;
    for (unsigned x : e) d += x;
    return d;
}

struct GradedLexLess {
    bool operator()(const Exponents& x, const Exponents& y) const {
        const unsigned dx = exponents_degree(x), dy = exponents_degree(y);
        if (dx != dy) return dx < dy;
        return x < y;
    }
};

// All exponent vectors over nvars variables with total degree <= maxdeg,
// in ascending graded-lex order.
inline std::vector<Exponents> monomials_up_to(std::size_t nvars, unsigned maxdeg) {
    std::vector<Exponents> out;
    Exponents cur(nvars, 0);
    // Enumerate compositions of each degree d in lex order.
    for (unsigned d = 0; d <= maxdeg; ++d) {
        struct Rec {
            std::vector<Exponents>& out;
            Exponents& cur;
            std::size_t nvars;
            void walk(std::size_t i, unsigned remaining) {
                if (i + 1 == nvars) {
                    cur[i] = remaining;
                    out.push_back(cur);
                    return;
                }
                for (unsigned e = 0; e <= remaining; ++e) {
                    cur[i] = e;
                    walk(i + 1, remaining - e);
                }
            }
        } rec{out, cur, nvars};
        if (nvars == 0) {
            if (d == 0) out.push_back(cur);
            continue;
        }
        rec.walk(0, d);
    }
    return out;
}

template <class C>
class MultiPoly {
  public:
    using TermMap = std::map<Exponents, C, GradedLexLess>;

    // Zero polynomial in zero variables; assign before use in any arity.
    MultiPoly() : nvars_(0) {}
    explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

    static MultiPoly constant(std::size_t nvars, const C& c) {
        MultiPoly p(nvars);
        p.add_term(Exponents(nvars, 0), c);
        return p;
    }

    static MultiPoly variable(std::size_t nvars, std::size_t i) {
        if (i >= nvars) throw std::out_of_range("variable index");
        MultiPoly p(nvars);
        Exponents e(nvars, 0);
        e[i] = 1;
        p.add_term(e, C(1));
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    unsigned total_degree() const {
        return terms_.empty() ? 0 : exponents_degree(terms_.rbegin()->first);
    }

    void add_term(const Exponents& e, const C& c) {
        if (e.size() != nvars_) throw std::invalid_argument("exponent arity mismatch");
        if (c == C()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second = it->second + c;
            if (it->second == C()) terms_.erase(it);
        }
    }

    MultiPoly operator+(const MultiPoly& o) const {
        check_arity(o);
        MultiPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }

    MultiPoly operator-() const {
        MultiPoly r(nvars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    MultiPoly operator-(const MultiPoly& o) const { return *this + (-o); }

    MultiPoly operator*(const MultiPoly& o) const {
        check_arity(o);
        MultiPoly r(nvars_);
        for (const auto& [e1, c1] : terms_) {
            for (const auto& [e2, c2] : o.terms_) {
                Exponents e(nvars_);
                for (std::size_t i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
                r.add_term(e, c1 * c2);
            }
        }
        return r;
    }

    MultiPoly scaled(const C& c) const {
        MultiPoly r(nvars_);
        if (c == C()) return r;
        for (const auto& [e, coef] : terms_) r.add_term(e, coef * c);
        return r;
    }

    MultiPoly operator*(const C& c) const { return scaled(c); }
    friend MultiPoly operator*(const C& c, const MultiPoly& p) { return p.scaled(c); }

    bool operator==(const MultiPoly& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    C evaluate(const std::vector<C>& point) const {
        if (point.size() != nvars_) throw std::invalid_argument("evaluation arity mismatch");
        const auto powers = power_table(point);
        C acc{};
        for (const auto& [e, c] : terms_) {
            C term = c;
            for (std::size_t i = 0; i < nvars_; ++i) {
                if (e[i] > 0) term = term * powers[i][e[i]];
            }
            acc = acc + term;
        }
        return acc;
    }

    MultiPoly derivative(std::size_t var) const {
        if (var >= nvars_) throw std::out_of_range("derivative variable");
        MultiPoly r(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exponents d = e;
            d[var] -= 1;
            r.add_term(d, c * C(static_cast<long>(e[var])));
        }
        return r;
    }

    // Substitutes point[i] for every variable with mask[i] set; the result
    // stays in the same variable space with those exponents zeroed.
    MultiPoly substitute(const std::vector<bool>& mask, const std::vector<C>& point) const {
        if (mask.size() != nvars_ || point.size() != nvars_) {
            throw std::invalid_argument("substitution arity mismatch");
        }
        const auto powers = power_table(point);
        MultiPoly r(nvars_);
        for (const auto& [e, c] : terms_) {
            C coef = c;
            Exponents rest(nvars_, 0);
            for (std::size_t i = 0; i < nvars_; ++i) {
                if (mask[i]) {
                    if (e[i] > 0) coef = coef * powers[i][e[i]];
                } else {
                    rest[i] = e[i];
                }
            }
            r.add_term(rest, coef);
        }
        return r;
    }

    // Collects the polynomial as sum over monomials in the masked block with
    // coefficients polynomial in the remaining variables.
    std::vector<std::pair<Exponents, MultiPoly>> coefficients_wrt(
        const std::vector<bool>& mask) const {
        if (mask.size() != nvars_) throw std::invalid_argument("mask arity mismatch");
        std::map<Exponents, MultiPoly, GradedLexLess> buckets;
        for (const auto& [e, c] : terms_) {
            Exponents block(nvars_, 0), rest(nvars_, 0);
            for (std::size_t i = 0; i < nvars_; ++i) (mask[i] ? block[i] : rest[i]) = e[i];
            auto it = buckets.find(block);
            if (it == buckets.end()) it = buckets.emplace(block, MultiPoly(nvars_)).first;
            it->second.add_term(rest, c);
        }
        return {buckets.begin(), buckets.end()};
    }

    std::string to_string(const std::vector<std::string>& names) const {
        if (names.size() != nvars_) throw std::invalid_argument("name arity mismatch");
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!out.empty()) out += " + ";
            std::string coef = coeff_string(it->second);
            bool printed_coef = false;
            if (coef != "1" || exponents_degree(it->first) == 0) {
                out += coef;
                printed_coef = true;
            }
            for (std::size_t i = 0; i < nvars_; ++i) {
                if (it->first[i] == 0) continue;
                if (printed_coef || out.back() != ' ') {
                    if (!out.empty() && out.back() != ' ' && out.back() != '+') out += "*";
                }
                out += names[i];
                if (it->first[i] > 1) out += "^" + std::to_string(it->first[i]);
                printed_coef = true;
            }
        }
        return out;
    }

  private:
    void check_arity(const MultiPoly& o) const {
        if (nvars_ != o.nvars_) throw std::invalid_argument("polynomial arity mismatch");
    }

    std::vector<std::vector<C>> power_table(const std::vector<C>& point) const {
        std::vector<unsigned> maxe(nvars_, 0);
        for (const auto& [e, c] : terms_) {
            for (std::size_t i = 0; i < nvars_; ++i) maxe[i] = std::max(maxe[i], e[i]);
        }
        std::vector<std::vector<C>> powers(nvars_);
        for (std::size_t i = 0; i < nvars_; ++i) {
            powers[i].resize(maxe[i] + 1);
            powers[i][0] = C(1);
            for (unsigned k = 1; k <= maxe[i]; ++k) powers[i][k] = powers[i][k - 1] * point[i];
        }
        return powers;
    }

    static std::string coeff_string(const C& c) {
        using ecs::to_string;
        std::string s = to_string(c);
        const bool composite = s.find('+') != std::string::npos ||
                               s.find('-', 1) != std::string::npos ||
                               s.find('*') != std::string::npos;
        return composite ? "(" + s + ")" : s;
    }

    std::size_t nvars_;
    TermMap terms_;
};

template <class C>
C eval_monomial(const Exponents& e, const std::vector<C>& point) {
    C acc(1);
    for (std::size_t i = 0; i < e.size(); ++i) {
        for (unsigned k = 0; k < e[i]; ++k) acc = acc * point[i];
    }
    return acc;
}

}  // namespace ecs
