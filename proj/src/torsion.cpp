#include "ecs/torsion.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "ecs/factor.hpp"
#include "ecs/minimal.hpp"
#include "ecs/parallel.hpp"

namespace ecs {
namespace {

// All d > 0 with d^2 | n.
std::vector<BigInt> square_root_divisors(const BigInt& n) {
    const PrimeFactorization f = factor_integer(n);
    std::vector<BigInt> out{BigInt(1)};
    for (const auto& pe : f.factors) {
        const unsigned half = pe.second / 2;
        if (half == 0) continue;
        const std::size_t base = out.size();
        BigInt pk(1);
        for (unsigned k = 1; k <= half; ++k) {
            pk *= pe.first;
            for (std::size_t i = 0; i < base; ++i)
                out.push_back(BigInt(out[i] * pk));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<BigInt> positive_divisors(const BigInt& n) {
    const PrimeFactorization f = factor_integer(n);
    std::vector<BigInt> out{BigInt(1)};
    for (const auto& pe : f.factors) {
        const std::size_t base = out.size();
        BigInt pk(1);
        for (unsigned k = 1; k <= pe.second; ++k) {
            pk *= pe.first;
            for (std::size_t i = 0; i < base; ++i)
                out.push_back(BigInt(out[i] * pk));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

BigInt cubic_at(const BigInt& c2, const BigInt& c1, const BigInt& c0,
                const BigInt& x) {
    return BigInt(((x + c2) * x + c1) * x + c0);
}

// Integer roots of x^3 + c2 x^2 + c1 x + c0, ascending.
std::vector<BigInt> monic_cubic_integer_roots(const BigInt& c2,
                                              const BigInt& c1,
                                              const BigInt& c0) {
    std::vector<BigInt> roots;
    if (c0 == 0) {
        roots.emplace_back(0);
        // Remaining factor x^2 + c2 x + c1.
        const BigInt disc = BigInt(c2 * c2 - 4 * c1);
        BigInt s;
        if (disc >= 0 && is_perfect_square(disc, s)) {
            const BigInt r1 = BigInt(s - c2);
            const BigInt r2 = BigInt(-s - c2);
            if (r1 % 2 == 0) roots.push_back(BigInt(r1 / 2));
            if (s != 0 && r2 % 2 == 0) roots.push_back(BigInt(r2 / 2));
        }
    } else {
        for (const BigInt& d : positive_divisors(c0)) {
            if (cubic_at(c2, c1, c0, d) == 0) roots.push_back(d);
            const BigInt neg = BigInt(-d);
            if (cubic_at(c2, c1, c0, neg) == 0) roots.push_back(neg);
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

// Smallest n <= cap with nP = O, or 0 when none exists.
unsigned certify_order(const WeierstrassModel& e, const CurvePoint& p,
                       unsigned cap) {
    for (unsigned k = 1; k <= cap; ++k)
        if (scalar_multiply(e, BigInt(k), p).is_infinity()) return k;
    return 0;
}

BigInt as_integer(const BigRational& q) {
    if (!is_integer(q))
        throw std::domain_error("expected an integer value");
    return numerator(q);
}

BigInt symplectic_order_formula(unsigned g) {
    BigInt out = pow_int(BigInt(5), static_cast<unsigned long>(g) * g);
    for (unsigned i = 1; i <= g; ++i)
        out *= pow_int(BigInt(5), 2ul * i) - 1;
    return out;
}

}  // namespace

std::string TorsionGroup::structure() const {
    if (invariant_factors.empty()) return "trivial";
    std::string out;
    for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
        if (i > 0) out += " x ";
        out += "Z/" + std::to_string(invariant_factors[i]);
    }
    return out;
}

TorsionGroup torsion_subgroup(const WeierstrassModel& e) {
    const MinimalModelResult mm = minimalize(e);
    const WeierstrassModel& m = mm.model;

    // Completed-square model y^2 = x^3 + b2 x^2 + 8 b4 x + 16 b6, reached by
    // (x, y) -> (4x, 8y + 4 a1 x + 4 a3). Torsion is integral here and obeys
    // y = 0 or y^2 | disc, whatever the a1, a3 of the minimal model are.
    const ModelMap to_b{make_rational(BigInt(1), BigInt(2)), BigRational(0),
                        make_rational(BigInt(-m.a1()), BigInt(2)),
                        make_rational(BigInt(-m.a3()), BigInt(2))};
    const WeierstrassModel bm = apply_model_map(m, to_b);
    const BigInt c2 = bm.a2();
    const BigInt c1 = bm.a4();
    const BigInt c0 = bm.a6();

    std::vector<std::pair<BigInt, BigInt>> candidates;
    for (const BigInt& x : monic_cubic_integer_roots(c2, c1, c0))
        candidates.emplace_back(x, BigInt(0));
    for (const BigInt& d : square_root_divisors(bm.discriminant())) {
        for (const BigInt& x :
             monic_cubic_integer_roots(c2, c1, BigInt(c0 - d * d))) {
            candidates.emplace_back(x, d);
            candidates.emplace_back(x, BigInt(-d));
        }
    }

    const ModelMap from_b = to_b.inverse();
    std::vector<TorsionPoint> pts;
    pts.push_back(TorsionPoint{CurvePoint::infinity(), 1});
    for (const auto& cand : candidates) {
        const CurvePoint p{BigRational(cand.first), BigRational(cand.second)};
        if (!on_curve(bm, p)) continue;
        const unsigned ord = certify_order(bm, p, 12);
        if (ord == 0) continue;
        pts.push_back(TorsionPoint{from_b.apply(p), ord});
    }
    std::sort(pts.begin() + 1, pts.end(),
              [](const TorsionPoint& a, const TorsionPoint& b) {
                  return point_less(a.point, b.point);
              });

    TorsionGroup out{m, static_cast<unsigned>(pts.size()), {}, pts, 12};
    const long twos =
        std::count_if(pts.begin(), pts.end(),
                      [](const TorsionPoint& t) { return t.order == 2; });
    if (out.order > 1) {
        if (twos == 3)
            out.invariant_factors = {2u, out.order / 2u};
        else
            out.invariant_factors = {out.order};
    }
    return out;
}

BigInt symplectic_group_order(unsigned g) {
    if (g < 1) throw std::domain_error("symplectic group order needs g >= 1");
    if (g == 1) {
        long count = 0;
        for (int a = 0; a < 5; ++a)
            for (int b = 0; b < 5; ++b)
                for (int c = 0; c < 5; ++c)
                    for (int d = 0; d < 5; ++d)
                        if (((a * d - b * c) % 5 + 5) % 5 == 1) ++count;
        return BigInt(count);
    }
    return symplectic_order_formula(g);
}

ThresholdVerdict stable_integrality_threshold(const BigInt& n, unsigned d,
                                              unsigned g) {
    if (n < 2 || d < 1 || g < 1)
        throw std::domain_error("threshold needs n >= 2, d >= 1, g >= 1");
    ThresholdVerdict v{n, d, g, symplectic_group_order(g), false, std::nullopt};
    const PrimeFactorization f = factor_integer(n);
    if (f.factors.size() != 1) {
        v.satisfied = true;  // not a prime power
        return v;
    }
    const BigInt& p = f.factors[0].first;
    v.prime_power = std::make_pair(p, f.factors[0].second);
    const BigInt drop = BigInt(n - n / p);  // p^k - p^(k-1)
    v.satisfied = drop > v.c * d;
    return v;
}

BigInt corollary_bound(unsigned d, unsigned g, const BigInt& p) {
    if (d < 1 || g < 1)
        throw std::domain_error("corollary bound needs d >= 1, g >= 1");
    if (!is_probable_prime(p))
        throw std::domain_error("corollary bound needs a prime p");
    const BigInt c = symplectic_group_order(g);
    const BigInt cd = BigInt(c * d);
    const BigInt half = BigInt((cd + 1) / 2);  // ceil(Cd / 2)
    if (!half.fits_ulong_p())
        throw std::domain_error("corollary bound exponent out of range");
    const BigInt weil =
        pow_int(BigInt(1 + pow_int(p, half.get_ui())), 2ul * g);
    const BigInt kernel = pow_int(BigInt(2 * cd), 2ul * g);
    return BigInt(weil * kernel);
}

WeierstrassModel tate_normal_curve(unsigned n, const BigRational& t) {
    if (n < 3 || n > 10)
        throw std::domain_error("normal-form family covers orders 3..10");
    if (n == 3) {
        // y^2 + xy + ty = x^3; (0,0) is a flex of order 3.
        const BigInt u = denominator(t);
        const BigInt ucube = BigInt(u * u * u);
        const BigInt a3 = as_integer(BigRational(BigRational(ucube) * t));
        return WeierstrassModel(u, BigInt(0), a3, BigInt(0), BigInt(0));
    }
    const BigRational one(1);
    BigRational b, c;
    switch (n) {
        case 4: b = t; c = BigRational(0); break;
        case 5: b = t; c = t; break;
        case 6: c = t; b = BigRational(t + t * t); break;
        case 7: b = BigRational(t * t * t - t * t); c = BigRational(t * t - t); break;
        case 8: b = BigRational((2 * t - 1) * (t - 1)); c = BigRational(b / t); break;
        case 9:
            c = BigRational(t * t * (t - one));
            b = BigRational(c * (t * t - t + one));
            break;
        case 10: {
            const BigRational den = BigRational(t * t - 3 * t + one);
            if (den == 0) throw std::domain_error("degenerate parameter");
            c = BigRational(-t * (t - one) * (2 * t - one) / den);
            b = BigRational(t * t * t * (t - one) * (2 * t - one) / (den * den));
            break;
        }
        default: break;
    }
    // Clear denominators: a1 = u(1-c), a2 = -u^2 b, a3 = -u^3 b stay fixed on
    // (0, 0).
    const BigInt u = lcm(denominator(b), denominator(c));
    const BigRational uq(u);
    const BigInt a1 = as_integer(BigRational(uq * (one - c)));
    const BigInt a2 = as_integer(BigRational(-(uq * uq) * b));
    const BigInt a3 = as_integer(BigRational(-(uq * uq * uq) * b));
    return WeierstrassModel(a1, a2, a3, BigInt(0), BigInt(0));
}

std::vector<WeierstrassModel> torsion_corpus(unsigned per_order) {
    std::vector<WeierstrassModel> out;
    for (unsigned n = 3; n <= 10; ++n) {
        unsigned kept = 0;
        for (long t = 1; t <= 60 && kept < per_order; ++t) {
            std::optional<WeierstrassModel> curve;
            try {
                curve = tate_normal_curve(n, BigRational(t));
            } catch (const std::domain_error&) {
                continue;  // singular member of the family
            }
            const TorsionGroup tg = torsion_subgroup(*curve);
            const bool realized = std::any_of(
                tg.points.begin(), tg.points.end(),
                [n](const TorsionPoint& p) { return p.order == n; });
            if (!realized) continue;
            out.push_back(*curve);
            ++kept;
        }
        if (kept < per_order)
            throw std::domain_error("could not realize torsion order " +
                                    std::to_string(n));
    }
    return out;
}

AuditReport audit_corpus(const std::vector<WeierstrassModel>& corpus,
                         const std::vector<BigInt>& s, unsigned jobs) {
    std::vector<std::optional<CurveAudit>> slots(corpus.size());
    parallel_for(corpus.size(), effective_jobs(jobs), [&](std::size_t i) {
        CurveAudit audit{corpus[i], torsion_subgroup(corpus[i]), {}};
        for (const TorsionPoint& tp : audit.torsion.points) {
            if (tp.order < 3) continue;
            TorsionPointAudit pa;
            pa.point = tp.point;
            pa.order = tp.order;
            pa.integral =
                is_integer(tp.point.x()) && is_integer(tp.point.y());
            const StableReport rep = is_stably_integral(
                audit.torsion.minimal_model, tp.point, s);
            pa.stable = rep.verdict;
            pa.evidence = rep.per_prime_evidence;
            if (tp.order % 2 == 1) {
                for (const auto& ev : pa.evidence)
                    if (is_blocking(ev.second) && tp.order % ev.first != 0)
                        pa.anomaly = true;
            }
            audit.audited.push_back(pa);
        }
        slots[i] = std::move(audit);
    });

    AuditReport report;
    for (std::optional<CurveAudit>& slot : slots) {
        report.points_audited += slot->audited.size();
        for (const TorsionPointAudit& pa : slot->audited)
            if (pa.anomaly) ++report.anomalies;
        report.curves.push_back(std::move(*slot));
    }
    return report;
}

}  // namespace ecs
