#include "ecs/tate.hpp"

#include <algorithm>
#include <cassert>

#include "ecs/factor.hpp"

namespace ecs {
namespace {

long vp(const BigInt& n, const BigInt& p) { return p_valuation(n, p); }

BigInt exact_div(const BigInt& n, const BigInt& d) {
    if (n % d != 0) throw std::logic_error("inexact division in reduction step");
    return n / d;
}

// Legendre symbol, p an odd prime.
int legendre(const BigInt& a, const BigInt& p) {
    const BigInt r = mod_floor(a, p);
    if (r == 0) return 0;
    return mod_pow(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

// Number of roots in F_p of Y^2 + beta Y + gamma, given distinct roots in
// the algebraic closure (nonzero discriminant mod p): 2 or 0.
int quadratic_roots(const BigInt& beta, const BigInt& gamma, const BigInt& p) {
    if (p == 2) {
        // beta odd here; both F_2 values give the same parity test.
        return mod_floor(gamma, 2) == 0 ? 2 : 0;
    }
    const BigInt disc = beta * beta - 4 * gamma;
    return legendre(disc, p) == 1 ? 2 : 0;
}

// --- cubic root counting over F_p (all roots simple) ---------------------

using Poly3 = std::vector<BigInt>;  // coefficients, ascending degree

Poly3 trim(Poly3 f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

Poly3 poly_mod(const Poly3& f, const Poly3& g, const BigInt& p) {
    Poly3 r = f;
    const BigInt lead_inv = mod_inverse(g.back(), p);
    while (r.size() >= g.size()) {
        const BigInt factor = mod_floor(r.back() * lead_inv, p);
        const std::size_t shift = r.size() - g.size();
        for (std::size_t i = 0; i < g.size(); ++i)
            r[shift + i] = mod_floor(r[shift + i] - factor * g[i], p);
        r = trim(std::move(r));
        if (r.empty()) break;
    }
    return r;
}

Poly3 poly_mul_mod(const Poly3& a, const Poly3& b, const Poly3& m, const BigInt& p) {
    if (a.empty() || b.empty()) return {};
    Poly3 prod(a.size() + b.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = mod_floor(prod[i + j] + a[i] * b[j], p);
    return poly_mod(trim(std::move(prod)), m, p);
}

// T^p mod (m, p) by square and multiply.
Poly3 frobenius_mod(const Poly3& m, const BigInt& p) {
    Poly3 result{BigInt(1)};
    Poly3 base{BigInt(0), BigInt(1)};  // T
    BigInt e = p;
    while (e > 0) {
        if (mpz_tstbit(e.get_mpz_t(), 0)) result = poly_mul_mod(result, base, m, p);
        base = poly_mul_mod(base, base, m, p);
        e >>= 1;
    }
    return result;
}

std::size_t poly_gcd_degree(Poly3 a, Poly3 b, const BigInt& p) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!b.empty()) {
        Poly3 r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a.empty() ? 0 : a.size() - 1;
}

// Roots in F_p of T^3 + b T^2 + c T + d, all distinct: 0, 1, or 3.
int cubic_roots(const BigInt& b, const BigInt& c, const BigInt& d, const BigInt& p) {
    if (p < 60) {
        int count = 0;
        for (BigInt t = 0; t < p; ++t)
            if (mod_floor(((t + b) * t + c) * t + d, p) == 0) ++count;
        return count;
    }
    const Poly3 cubic{mod_floor(d, p), mod_floor(c, p), mod_floor(b, p), BigInt(1)};
    Poly3 frob = frobenius_mod(cubic, p);  // T^p mod cubic
    // gcd(T^p - T, cubic): subtract T.
    if (frob.size() < 2) frob.resize(2, BigInt(0));
    frob[1] = mod_floor(frob[1] - 1, p);
    return static_cast<int>(poly_gcd_degree(cubic, trim(std::move(frob)), p));
}

// --- translation helpers ---------------------------------------------------

WeierstrassModel shift_x(const WeierstrassModel& e, const BigInt& r) {
    return apply_model_map(e, ModelMap{BigRational(1), BigRational(r),
                                       BigRational(0), BigRational(0)});
}

WeierstrassModel shift_y(const WeierstrassModel& e, const BigInt& s, const BigInt& t) {
    return apply_model_map(e, ModelMap{BigRational(1), BigRational(0),
                                       BigRational(s), BigRational(t)});
}

// Singular point of the reduced curve mod p, as a translation (r0, t0).
std::pair<BigInt, BigInt> singular_shift(const WeierstrassModel& e, const BigInt& p) {
    BigInt r0, t0;
    if (p == 2) {
        if (e.a1() % 2 == 0) {
            // dF/dy = a3 identically; a3 must be even on a singular fiber.
            assert(e.a3() % 2 == 0);
            r0 = mod_floor(e.a4(), 2);
            t0 = mod_floor(r0 * (1 + e.a2() + e.a4()) + e.a6(), 2);
        } else {
            r0 = mod_floor(e.a3(), 2);
            t0 = mod_floor(r0 + e.a4(), 2);
        }
        return {r0, t0};
    }
    if (p == 3) {
        if (e.b2() % 3 == 0)
            r0 = mod_floor(-e.b6(), 3);
        else
            r0 = mod_floor(-e.b4() * mod_inverse(e.b2(), 3), 3);
    } else {
        const BigInt inv12 = mod_inverse(12, p);
        if (e.c4() % p == 0)
            r0 = mod_floor(-e.b2() * inv12, p);
        else
            r0 = mod_floor(-(e.b2() * e.c4() + e.c6()) *
                               mod_inverse(12 * e.c4(), p),
                           p);
    }
    t0 = mod_floor(-(e.a1() * r0 + e.a3()) * mod_inverse(2, p), p);
    return {r0, t0};
}

long components_of(const KodairaType& k) {
    switch (k.kind) {
        case KodairaKind::I0: return 1;
        case KodairaKind::In: return static_cast<long>(k.n);
        case KodairaKind::II: return 1;
        case KodairaKind::III: return 2;
        case KodairaKind::IV: return 3;
        case KodairaKind::I0star: return 5;
        case KodairaKind::Instar: return 5 + static_cast<long>(k.n);
        case KodairaKind::IVstar: return 7;
        case KodairaKind::IIIstar: return 8;
        case KodairaKind::IIstar: return 9;
    }
    return 1;
}

}  // namespace

std::string KodairaType::str() const {
    switch (kind) {
        case KodairaKind::I0: return "I0";
        case KodairaKind::In: return "I" + std::to_string(n);
        case KodairaKind::II: return "II";
        case KodairaKind::III: return "III";
        case KodairaKind::IV: return "IV";
        case KodairaKind::I0star: return "I0*";
        case KodairaKind::Instar: return "I" + std::to_string(n) + "*";
        case KodairaKind::IVstar: return "IV*";
        case KodairaKind::IIIstar: return "III*";
        case KodairaKind::IIstar: return "II*";
    }
    return "?";
}

std::string to_string(ReductionClass c) {
    switch (c) {
        case ReductionClass::good: return "good";
        case ReductionClass::multiplicative_split: return "multiplicative_split";
        case ReductionClass::multiplicative_nonsplit: return "multiplicative_nonsplit";
        case ReductionClass::additive: return "additive";
    }
    return "?";
}

LocalReduction tate_local(const WeierstrassModel& e, const BigInt& p) {
    if (p < 2 || !is_probable_prime(p))
        throw std::domain_error("reduction prime must be prime");

    LocalReduction out;
    out.p = p;
    out.v_discriminant = vp(e.discriminant(), p);
    out.v_c4 = vp(e.c4(), p);
    out.v_c6 = vp(e.c6(), p);

    // Step 1: good reduction.
    if (out.v_discriminant == 0) {
        out.kodaira = {KodairaKind::I0, 0};
        out.cls = ReductionClass::good;
        out.tamagawa = 1;
        out.conductor_exponent = 0;
        return out;
    }

    // Step 2: move the singular point of the special fiber to the origin.
    const auto [r0, t0] = singular_shift(e, p);
    out.singular_point = std::make_pair(r0, t0);
    WeierstrassModel w = apply_model_map(
        e, ModelMap{BigRational(1), BigRational(r0), BigRational(0), BigRational(t0)});
    assert(w.a3() % p == 0 && w.a4() % p == 0 && w.a6() % p == 0);

    const long n = out.v_discriminant;

    // Step 3: node (tangent cone split over the closure) -> multiplicative.
    if (w.b2() % p != 0) {
        out.kodaira = {KodairaKind::In, static_cast<unsigned>(n)};
        bool split;
        if (p == 2)
            split = w.a2() % 2 == 0;  // T^2 + T + a2 has a root
        else
            split = legendre(w.b2(), p) == 1;
        out.cls = split ? ReductionClass::multiplicative_split
                        : ReductionClass::multiplicative_nonsplit;
        out.tamagawa = split ? BigInt(n) : BigInt(n % 2 == 0 ? 2 : 1);
        out.conductor_exponent = 1;
        return out;
    }

    out.cls = ReductionClass::additive;
    const auto finish = [&](KodairaKind kind, unsigned idx, const BigInt& c) {
        out.kodaira = {kind, idx};
        out.tamagawa = c;
        out.conductor_exponent =
            out.v_discriminant + 1 - components_of(out.kodaira);
        return out;
    };

    // Step 4: type II.
    if (vp(w.a6(), p) < 2) return finish(KodairaKind::II, 0, 1);
    // Step 5: type III.
    if (vp(w.b8(), p) < 3) return finish(KodairaKind::III, 0, 2);
    // Step 6: type IV; index via Y^2 + (a3/p) Y - a6/p^2.
    if (vp(w.b6(), p) < 3) {
        const int roots = quadratic_roots(exact_div(w.a3(), p),
                                          exact_div(-w.a6(), p * p), p);
        return finish(KodairaKind::IV, 0, 1 + roots);
    }

    // Normalize: p | a1, a2; p^2 | a3, a4; p^3 | a6.
    {
        BigInt s, t;
        if (p == 2) {
            s = mod_floor(w.a2(), 2);
            t = 2 * mod_floor(exact_div(w.a6(), 4), 2);
        } else {
            const BigInt half = mod_inverse(2, p);
            s = mod_floor(-w.a1() * half, p);
            w = shift_y(w, s, 0);
            s = 0;
            const BigInt y0 = mod_floor(-exact_div(w.a3(), p) * half, p);
            t = p * y0;
        }
        w = shift_y(w, s, t);
        assert(vp(w.a1(), p) >= 1 && vp(w.a2(), p) >= 1);
        assert(vp(w.a3(), p) >= 2 && vp(w.a4(), p) >= 2 && vp(w.a6(), p) >= 3);
    }

    // Step 7: the cubic T^3 + b T^2 + c T + d from the normalized model.
    BigInt b = exact_div(w.a2(), p);
    BigInt c = exact_div(w.a4(), p * p);
    BigInt d = exact_div(w.a6(), p * p * p);
    const BigInt disc = 18 * b * c * d - 4 * b * b * b * d + b * b * c * c -
                        4 * c * c * c - 27 * d * d;

    if (disc % p != 0)
        return finish(KodairaKind::I0star, 0, 1 + cubic_roots(b, c, d, p));

    bool triple;
    if (p == 2)
        triple = (b - c) % 2 == 0 && (c - d) % 2 == 0;
    else if (p == 3)
        triple = b % 3 == 0 && c % 3 == 0;
    else
        triple = (b * b - 3 * c) % p == 0;

    if (!triple) {
        // Step 8: I_n*. Center the double root of the cubic.
        BigInt theta;
        if (p < 5) {
            theta = -1;
            for (BigInt x = 0; x < p; ++x) {
                const bool value = mod_floor(((x + b) * x + c) * x + d, p) == 0;
                const bool deriv = mod_floor((3 * x + 2 * b) * x + c, p) == 0;
                if (value && deriv) {
                    theta = x;
                    break;
                }
            }
            if (theta < 0) throw std::logic_error("double root not found");
        } else {
            theta = mod_floor((9 * d - b * c) *
                                  mod_inverse(2 * (b * b - 3 * c), p),
                              p);
        }
        w = shift_x(w, p * theta);
        assert(vp(w.a2(), p) == 1 && vp(w.a4(), p) >= 3 && vp(w.a6(), p) >= 4);

        const BigInt a2p = exact_div(w.a2(), p);
        BigInt mx = p * p, my = p * p;
        long ix = 3, iy = 3;
        const long guard = 2 * out.v_discriminant + 10;
        for (long rounds = 0; rounds < guard; ++rounds) {
            // Y-side: Y^2 + (a3/my) Y - a6/(mx*my).
            BigInt beta = exact_div(w.a3(), my);
            BigInt gamma = exact_div(-w.a6(), mx * my);
            BigInt qdisc = beta * beta - 4 * gamma;
            if (qdisc % p != 0) {
                const unsigned idx = static_cast<unsigned>(ix + iy - 5);
                return finish(KodairaKind::Instar, idx,
                              2 + quadratic_roots(beta, gamma, p));
            }
            {
                const BigInt y0 = p == 2 ? mod_floor(gamma, 2)
                                         : mod_floor(-beta * mod_inverse(2, p), p);
                w = shift_y(w, 0, my * y0);
                ++iy;
                my *= p;
            }
            // X-side: a2p X^2 + (a4/(p*mx)) X + a6/(mx*my).
            beta = exact_div(w.a4(), p * mx);
            gamma = exact_div(w.a6(), mx * my);
            qdisc = beta * beta - 4 * a2p * gamma;
            if (qdisc % p != 0) {
                const unsigned idx = static_cast<unsigned>(ix + iy - 5);
                // Root count of a2p X^2 + beta X + gamma.
                int roots;
                if (p == 2)
                    roots = mod_floor(gamma, 2) == 0 ? 2 : 0;
                else
                    roots = legendre(qdisc, p) == 1 ? 2 : 0;
                return finish(KodairaKind::Instar, idx, 2 + roots);
            }
            {
                const BigInt x0 =
                    p == 2 ? mod_floor(gamma, 2)
                           : mod_floor(-beta * mod_inverse(2 * a2p, p), p);
                w = shift_x(w, mx * x0);
                ++ix;
                mx *= p;
            }
        }
        throw std::logic_error("unterminated I_n* loop");
    }

    // Step 9: triple root; center it.
    BigInt theta3;
    if (p == 2)
        theta3 = mod_floor(b, 2);
    else if (p == 3)
        theta3 = mod_floor(-d, 3);
    else
        theta3 = mod_floor(-b * mod_inverse(3, p), p);
    w = shift_x(w, p * theta3);
    assert(vp(w.a2(), p) >= 2 && vp(w.a4(), p) >= 3 && vp(w.a6(), p) >= 4);

    // Type IV*: Y^2 + (a3/p^2) Y - a6/p^4.
    {
        const BigInt beta = exact_div(w.a3(), p * p);
        const BigInt gamma = exact_div(-w.a6(), p * p * p * p);
        if ((beta * beta - 4 * gamma) % p != 0)
            return finish(KodairaKind::IVstar, 0, 1 + quadratic_roots(beta, gamma, p));
        const BigInt y0 = p == 2 ? mod_floor(gamma, 2)
                                 : mod_floor(-beta * mod_inverse(2, p), p);
        w = shift_y(w, 0, p * p * y0);
    }
    // Step 10: type III*.
    if (vp(w.a4(), p) < 4) return finish(KodairaKind::IIIstar, 0, 2);
    // Step 11: type II*.
    if (vp(w.a6(), p) < 6) return finish(KodairaKind::IIstar, 0, 1);

    throw NonMinimalError("model is not minimal at " + to_string(p));
}

GlobalReduction global_reduction(const WeierstrassModel& e) {
    GlobalReduction g{minimalize(e), {}, BigInt(1)};
    for (const BigInt& p : prime_divisors(g.minimal.model.discriminant())) {
        LocalReduction lr = tate_local(g.minimal.model, p);
        g.conductor *= pow_int(p, static_cast<unsigned long>(lr.conductor_exponent));
        g.places.push_back(std::move(lr));
    }
    return g;
}

std::optional<std::pair<BigInt, BigInt>> reduce_point_mod_p(
    const WeierstrassModel& e, const CurvePoint& point, const BigInt& p) {
    if (point.is_infinity()) return std::nullopt;
    const long vx = p_valuation(point.x(), p);
    if (vx < 0) {
        // On an integral model v(y) = (3/2) v(x) < 0: the point reduces to
        // the zero section.
        assert(p_valuation(point.y(), p) < 0);
        return std::nullopt;
    }
    assert(p_valuation(point.y(), p) >= 0);
    const auto red = [&](const BigRational& q) {
        return mod_floor(numerator(q) * mod_inverse(denominator(q), p), p);
    };
    (void)e;
    return std::make_pair(red(point.x()), red(point.y()));
}

bool on_identity_component(const WeierstrassModel& e, const CurvePoint& point,
                           const BigInt& p) {
    if (!on_curve(e, point)) throw std::domain_error("point not on curve");
    const auto image = reduce_point_mod_p(e, point, p);
    if (!image) return true;  // the zero section meets the smooth locus
    const LocalReduction lr = tate_local(e, p);
    if (!lr.singular_point) return true;  // good reduction
    return *image != *lr.singular_point;
}

}  // namespace ecs
