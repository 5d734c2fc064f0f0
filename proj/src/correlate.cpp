#include "ecs/correlate.hpp"

#include <cstddef>
#include <set>
#include <stdexcept>
#include <utility>

#include "ecs/parallel.hpp"

namespace ecs {
namespace {

// Advances an odometer with the last digit fastest; false once exhausted.
bool advance(std::vector<std::size_t>& idx, std::size_t base) {
    std::size_t k = idx.size();
    while (k > 0) {
        if (++idx[k - 1] < base) return true;
        idx[k - 1] = 0;
        --k;
    }
    return false;
}

// Scales a rational row to integers and divides out the content; neither
// operation changes the nullspace.
std::vector<BigInt> integer_row(const std::vector<BigRational>& row) {
    BigInt l(1);
    for (const auto& q : row) l = BigInt(lcm(l, denominator(q)));
    std::vector<BigInt> out;
    out.reserve(row.size());
    for (const auto& q : row) {
        const BigInt scale = BigInt(l / denominator(q));
        out.push_back(BigInt(numerator(q) * scale));
    }
    BigInt g(0);
    for (const auto& v : out) g = BigInt(gcd(g, v));
    if (g > 1) {
        for (auto& v : out) v = BigInt(v / g);
    }
    return out;
}

struct EchelonForm {
    std::vector<std::vector<BigInt>> rows;
    std::vector<std::size_t> pivots;  // ascending pivot columns
};

// Fraction-free elimination: every intermediate entry is a minor of the
// input, so the division by the previous pivot is exact. No tolerances.
EchelonForm bareiss_echelon(std::vector<std::vector<BigInt>> m, std::size_t ncols) {
    EchelonForm ech;
    std::size_t r = 0;
    BigInt prev(1);
    for (std::size_t col = 0; col < ncols && r < m.size(); ++col) {
        std::size_t sel = m.size();
        for (std::size_t i = r; i < m.size(); ++i) {
            if (m[i][col] != 0) {
                sel = i;
                break;
            }
        }
        if (sel == m.size()) continue;
        std::swap(m[r], m[sel]);
        const BigInt piv = m[r][col];
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            const BigInt head = m[i][col];
            for (std::size_t j = col + 1; j < ncols; ++j) {
                BigInt t = BigInt(piv * m[i][j] - head * m[r][j]);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = t;
            }
            m[i][col] = 0;
        }
        prev = piv;
        ech.pivots.push_back(col);
        ++r;
    }
    ech.rows = std::move(m);
    return ech;
}

// One integer-primitive kernel vector per free column, unit at that column.
std::vector<std::vector<BigInt>> nullspace_basis(const EchelonForm& ech,
                                                 std::size_t ncols) {
    std::vector<bool> is_pivot(ncols, false);
    for (std::size_t c : ech.pivots) is_pivot[c] = true;
    std::vector<std::vector<BigInt>> out;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<BigRational> v(ncols, BigRational(0));
        v[f] = BigRational(1);
        for (std::size_t ii = ech.pivots.size(); ii-- > 0;) {
            const std::size_t c = ech.pivots[ii];
            const auto& row = ech.rows[ii];
            BigRational acc(0);
            for (std::size_t j = c + 1; j < ncols; ++j) {
                if (v[j] != 0 && row[j] != 0) {
                    acc = BigRational(acc + BigRational(row[j]) * v[j]);
                }
            }
            v[c] = BigRational(-acc / BigRational(row[c]));
        }
        BigInt l(1);
        for (const auto& q : v) l = BigInt(lcm(l, denominator(q)));
        std::vector<BigInt> w;
        w.reserve(ncols);
        for (const auto& q : v) w.push_back(BigInt(numerator(q) * BigInt(l / denominator(q))));
        BigInt g(0);
        for (const auto& x : w) g = BigInt(gcd(g, x));
        if (g > 1) {
            for (auto& x : w) x = BigInt(x / g);
        }
        out.push_back(std::move(w));  // w[f] = l / g > 0
    }
    return out;
}

// True when some member of `level_polys`, specialized at a length-(k-1)
// prefix of fiber points and the fiber parameter, stays a nonzero
// polynomial in the slot-k coordinates.
bool fiber_constrained_at(const std::vector<MultiPoly<BigRational>>& level_polys,
                          const std::vector<std::vector<BigRational>>& pts,
                          const BigRational& b, unsigned k, std::size_t dim,
                          std::size_t nv) {
    if (level_polys.empty()) return false;
    const std::size_t plen = static_cast<std::size_t>(k) - 1;
    std::vector<bool> mask(nv, false);
    for (std::size_t i = 0; i < plen * dim; ++i) mask[i] = true;
    mask[nv - 1] = true;
    std::vector<std::size_t> idx(plen, 0);
    while (true) {
        std::vector<BigRational> at(nv, BigRational(0));
        for (std::size_t s = 0; s < plen; ++s) {
            for (std::size_t i = 0; i < dim; ++i) at[s * dim + i] = pts[idx[s]][i];
        }
        at[nv - 1] = b;
        for (const auto& g : level_polys) {
            if (!g.substitute(mask, at).is_zero()) return true;
        }
        if (plen == 0 || !advance(idx, pts.size())) return false;
    }
}

}  // namespace

std::size_t point_dimension(const FiberedPointSet& ps) {
    std::size_t dim = 0;
    bool seen = false;
    for (const auto& [b, pts] : ps.fibers) {
        if (pts.empty()) throw std::invalid_argument("empty fiber in dataset");
        for (const auto& p : pts) {
            if (!seen) {
                dim = p.size();
                seen = true;
            } else if (p.size() != dim) {
                throw std::invalid_argument("ragged point dimensions");
            }
        }
    }
    if (seen && dim == 0) throw std::invalid_argument("zero-dimensional points");
    return dim;
}

std::vector<FiberTuples> assemble_tuples(const FiberedPointSet& ps, unsigned n) {
    if (n == 0) throw std::domain_error("tuple arity must be positive");
    const std::size_t dim = point_dimension(ps);
    std::vector<FiberTuples> out;
    out.reserve(ps.fibers.size());
    for (const auto& [b, pts] : ps.fibers) {
        FiberTuples ft;
        ft.parameter = b;
        std::vector<std::size_t> idx(n, 0);
        while (true) {
            std::vector<BigRational> tup;
            tup.reserve(static_cast<std::size_t>(n) * dim);
            for (std::size_t k = 0; k < n; ++k) {
                const auto& p = pts[idx[k]];
                tup.insert(tup.end(), p.begin(), p.end());
            }
            ft.tuples.push_back(std::move(tup));
            if (!advance(idx, pts.size())) break;
        }
        out.push_back(std::move(ft));
    }
    return out;
}

TupleMatrix build_tuple_matrix(const std::vector<FiberTuples>& tuples,
                               std::size_t tuple_len, unsigned degree,
                               unsigned jobs) {
    if (degree == 0) throw std::domain_error("degree must be positive");
    TupleMatrix m;
    m.degree = degree;
    m.nvars = tuple_len + 1;
    m.monomials = monomials_up_to(m.nvars, degree);
    std::vector<std::pair<const std::vector<BigRational>*, const BigRational*>> flat;
    for (const auto& ft : tuples) {
        for (const auto& t : ft.tuples) {
            if (t.size() != tuple_len) throw std::invalid_argument("tuple length mismatch");
            flat.emplace_back(&t, &ft.parameter);
        }
    }
    m.rows.assign(flat.size(), {});
    parallel_for(flat.size(), effective_jobs(jobs), [&](std::size_t i) {
        std::vector<BigRational> at(*flat[i].first);
        at.push_back(*flat[i].second);
        auto& row = m.rows[i];
        row.reserve(m.monomials.size());
        for (const auto& e : m.monomials) row.push_back(BigRational(eval_monomial(e, at)));
    });
    return m;
}

HypersurfaceFit fit_hypersurfaces(const std::vector<FiberTuples>& tuples,
                                  std::size_t tuple_len, unsigned degree,
                                  unsigned jobs) {
    const TupleMatrix tm = build_tuple_matrix(tuples, tuple_len, degree, jobs);
    const std::size_t ncols = tm.monomials.size();
    std::vector<std::vector<BigInt>> rows;
    rows.reserve(tm.rows.size());
    std::set<std::vector<BigInt>> seen;  // duplicate rows carry no rank
    for (const auto& r : tm.rows) {
        auto ir = integer_row(r);
        if (seen.insert(ir).second) rows.push_back(std::move(ir));
    }
    const EchelonForm ech = bareiss_echelon(std::move(rows), ncols);

    HypersurfaceFit fit;
    fit.rank = ech.pivots.size();
    fit.monomial_count = ncols;
    for (const auto& w : nullspace_basis(ech, ncols)) {
        for (const auto& row : tm.rows) {
            BigRational acc(0);
            for (std::size_t j = 0; j < ncols; ++j) {
                if (w[j] != 0) acc = BigRational(acc + BigRational(w[j]) * row[j]);
            }
            if (acc != 0) throw std::logic_error("kernel witness fails exact verification");
        }
        MultiPoly<BigRational> p(tm.nvars);
        for (std::size_t j = 0; j < ncols; ++j) {
            if (w[j] != 0) p.add_term(tm.monomials[j], BigRational(w[j]));
        }
        fit.basis.push_back(std::move(p));
    }
    return fit;
}

std::vector<MultiPoly<BigRational>> find_hypersurface(
    const std::vector<FiberTuples>& tuples, std::size_t tuple_len,
    unsigned degree, unsigned jobs) {
    return fit_hypersurfaces(tuples, tuple_len, degree, jobs).basis;
}

Lemma1Result lemma1_bound(const FiberedPointSet& points,
                          const std::vector<MultiPoly<BigRational>>& constraints,
                          unsigned n) {
    if (n == 0) throw std::domain_error("tuple arity must be positive");
    const std::size_t dim = point_dimension(points);
    const std::size_t nv = static_cast<std::size_t>(n) * dim + 1;
    std::vector<MultiPoly<BigRational>> active;
    for (const auto& g : constraints) {
        if (g.nvars() != nv) throw std::invalid_argument("constraint arity mismatch");
        if (!g.is_zero()) active.push_back(g);
    }

    Lemma1Result res;
    res.per_level.assign(n, 0);

    for (const auto& ft : assemble_tuples(points, n)) {
        for (const auto& tup : ft.tuples) {
            std::vector<BigRational> at(tup);
            at.push_back(ft.parameter);
            for (const auto& g : active) {
                const BigRational val = BigRational(g.evaluate(at));
                if (val != 0) {
                    throw std::domain_error("constraint does not vanish on a data tuple");
                }
            }
        }
    }

    if (active.empty()) {
        for (const auto& [b, pts] : points.fibers) {
            res.bound = std::max(res.bound, pts.size());
        }
        return res;
    }

    // levels[k-1]: polynomials in the first k slots plus the parameter.
    // Dropping slot k keeps every slot-k coefficient, so the vanishing data
    // carried down one level stays valid for the shorter prefixes.
    std::vector<std::vector<MultiPoly<BigRational>>> levels(n);
    levels[n - 1] = active;
    for (unsigned k = n; k >= 2; --k) {
        std::vector<bool> mask(nv, false);
        for (std::size_t i = 0; i < dim; ++i) mask[(static_cast<std::size_t>(k) - 1) * dim + i] = true;
        auto& down = levels[k - 2];
        for (const auto& g : levels[k - 1]) {
            for (const auto& [block, coeff] : g.coefficients_wrt(mask)) {
                if (coeff.is_zero()) continue;
                bool dup = false;
                for (const auto& h : down) {
                    if (h == coeff) {
                        dup = true;
                        break;
                    }
                }
                if (!dup) down.push_back(coeff);
            }
        }
    }

    for (const auto& [b, pts] : points.fibers) {
        unsigned hit = 0;
        for (unsigned k = n; k >= 1 && hit == 0; --k) {
            if (fiber_constrained_at(levels[k - 1], pts, b, k, dim, nv)) hit = k;
        }
        if (hit == 0) {
            res.excluded.push_back(b);
            continue;
        }
        res.per_level[hit - 1] = std::max(res.per_level[hit - 1], pts.size());
        res.bound = std::max(res.bound, pts.size());
    }
    return res;
}

CorrelationReport correlation_report(const FiberedPointSet& ps, unsigned n,
                                     unsigned degree, unsigned jobs) {
    const std::size_t dim = point_dimension(ps);
    const auto tuples = assemble_tuples(ps, n);

    CorrelationReport rep;
    rep.n = n;
    rep.degree = degree;
    for (const auto& ft : tuples) rep.tuple_count += ft.tuples.size();

    auto fit = fit_hypersurfaces(tuples, static_cast<std::size_t>(n) * dim, degree, jobs);
    rep.monomial_count = fit.monomial_count;
    rep.rank = fit.rank;
    rep.witnesses = std::move(fit.basis);
    rep.correlated = !rep.witnesses.empty();
    rep.per_level.assign(n, 0);
    if (rep.correlated) {
        Lemma1Result lem = lemma1_bound(ps, rep.witnesses, n);
        rep.bound = lem.bound;
        rep.per_level = std::move(lem.per_level);
        rep.excluded_fibers = std::move(lem.excluded);
    }
    rep.statement = std::to_string(n) + "-correlated at degree <= " +
                    std::to_string(degree) + ": " + (rep.correlated ? "yes" : "no");
    return rep;
}

}  // namespace ecs
