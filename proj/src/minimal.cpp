#include "ecs/minimal.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "ecs/factor.hpp"

namespace ecs {
namespace {

// v_p with the zero sentinel folded in.
long vp(const BigInt& n, const BigInt& p) { return p_valuation(n, p); }

// 3-adic admissibility: v3(c6) != 2.
bool admissible_at_3(const BigInt& c6) { return vp(c6, 3) != 2; }

// 2-adic admissibility: c6 = -1 (mod 4), or 16 | c4 with c6 = 0 or 8 (mod 32).
bool admissible_at_2(const BigInt& c4, const BigInt& c6) {
    if (mod_floor(c6, 4) == 3) return true;
    if (vp(c4, 2) < 4) return false;
    const BigInt r = mod_floor(c6, 32);
    return r == 0 || r == 8;
}

// Largest d with p^(4d) | c4 and p^(6d) | c6 (valuation infinity when the
// invariant vanishes), capped by v_p(disc) / 12.
long scale_exponent(const BigInt& c4, const BigInt& c6, const BigInt& delta,
                    const BigInt& p) {
    const long v4 = vp(c4, p), v6 = vp(c6, p), vd = vp(delta, p);
    long d = vd / 12;
    if (v4 != val_infinity) d = std::min(d, v4 / 4);
    if (v6 != val_infinity) d = std::min(d, v6 / 6);
    return d;
}

BigInt shift_c4(const BigInt& c4, const BigInt& p, long d) {
    BigInt out = c4;
    for (long i = 0; i < 4 * d; ++i) {
        assert(out % p == 0);
        out /= p;
    }
    return out;
}

BigInt shift_c6(const BigInt& c6, const BigInt& p, long d) {
    BigInt out = c6;
    for (long i = 0; i < 6 * d; ++i) {
        assert(out % p == 0);
        out /= p;
    }
    return out;
}

}  // namespace

bool invariants_admissible(const BigInt& c4, const BigInt& c6) {
    const BigInt num = c4 * c4 * c4 - c6 * c6;
    if (num == 0) return false;  // singular
    if (num % 1728 != 0) return false;
    return admissible_at_3(c6) && admissible_at_2(c4, c6);
}

std::optional<WeierstrassModel> model_from_c4c6(const BigInt& c4,
                                                const BigInt& c6) {
    if (!invariants_admissible(c4, c6)) return std::nullopt;

    // b2 = -c6 mod 12, representative in (-6, 6].
    BigInt b2 = mod_floor(-c6, 12);
    if (b2 > 6) b2 -= 12;
    if ((b2 * b2 - c4) % 24 != 0) return std::nullopt;
    const BigInt b4 = (b2 * b2 - c4) / 24;
    const BigInt b6num = -b2 * b2 * b2 + 36 * b2 * b4 - c6;
    if (b6num % 216 != 0) return std::nullopt;
    const BigInt b6 = b6num / 216;

    const BigInt a1 = mod_floor(b2, 2);
    const BigInt a3 = mod_floor(b6, 2);
    if ((b2 - a1 * a1) % 4 != 0 || (b4 - a1 * a3) % 2 != 0 ||
        (b6 - a3 * a3) % 4 != 0)
        return std::nullopt;
    const BigInt a2 = (b2 - a1 * a1) / 4;
    const BigInt a4 = (b4 - a1 * a3) / 2;
    const BigInt a6 = (b6 - a3 * a3) / 4;
    WeierstrassModel m(a1, a2, a3, a4, a6);
    if (m.c4() != c4 || m.c6() != c6)
        throw std::logic_error("invariant reconstruction mismatch");
    return m;
}

MinimalModelResult minimalize(const WeierstrassModel& e) {
    const BigInt &c4 = e.c4(), &c6 = e.c6(), &delta = e.discriminant();

    // Only primes dividing both invariants (or the surviving one, when the
    // other vanishes) can be scaled out.
    BigInt carrier;
    if (c4 == 0)
        carrier = c6;
    else if (c6 == 0)
        carrier = c4;
    else
        carrier = gcd(c4, c6);
    assert(carrier != 0);

    BigInt u(1);
    BigInt mc4 = c4, mc6 = c6;
    for (const BigInt& p : prime_divisors(carrier)) {
        long d = scale_exponent(c4, c6, delta, p);
        if (p == 2) {
            while (d > 0 && !admissible_at_2(shift_c4(c4, p, d), shift_c6(c6, p, d)))
                --d;
        } else if (p == 3) {
            while (d > 0 && !admissible_at_3(shift_c6(c6, p, d))) --d;
        }
        if (d <= 0) continue;
        u *= pow_int(p, static_cast<unsigned long>(d));
        mc4 = shift_c4(mc4, p, d);
        mc6 = shift_c6(mc6, p, d);
    }

    const auto model = model_from_c4c6(mc4, mc6);
    if (!model)
        throw std::logic_error("scaled invariants rejected unexpectedly");

    // Recover (r, s, t) from the first three coefficient relations; the
    // remaining two follow from matching c4 and c6.
    const BigRational uu(u);
    const BigRational s = (uu * model->a1() - e.a1()) / 2;
    const BigRational r =
        (uu * uu * model->a2() - e.a2() + s * e.a1() + s * s) / 3;
    const BigRational t = (uu * uu * uu * model->a3() - e.a3() - r * e.a1()) / 2;
    const ModelMap map{uu, r, s, t};
    if (apply_model_map(e, map) != *model)
        throw std::logic_error("minimal model map reconstruction failed");

    return MinimalModelResult{*model, map, u};
}

bool is_minimal_at(const WeierstrassModel& e, const BigInt& p) {
    long d = scale_exponent(e.c4(), e.c6(), e.discriminant(), p);
    if (p == 2) {
        while (d > 0 &&
               !admissible_at_2(shift_c4(e.c4(), p, d), shift_c6(e.c6(), p, d)))
            --d;
    } else if (p == 3) {
        while (d > 0 && !admissible_at_3(shift_c6(e.c6(), p, d))) --d;
    }
    return d == 0;
}

bool is_minimal(const WeierstrassModel& e) { return minimalize(e).u == 1; }

}  // namespace ecs
