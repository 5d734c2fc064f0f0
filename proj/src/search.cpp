#include "ecs/search.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <set>
#include <stdexcept>

#include "ecs/factor.hpp"
#include "ecs/parallel.hpp"

namespace ecs {
namespace {

// Pairwise coprime sieve moduli. M1 drives the block walk; M2 and M3 are
// secondary bitmask filters.
constexpr std::uint64_t kM1 = 20160;   // 2^6 * 3^2 * 5 * 7
constexpr std::uint64_t kM2 = 46189;   // 11 * 13 * 17 * 19
constexpr std::uint64_t kM3 = 765049;  // 23 * 29 * 31 * 37

// Ranges below this length skip sieve construction entirely.
constexpr std::uint64_t kDirectLimit = 1u << 14;

std::vector<bool> squares_mod(std::uint64_t m) {
    std::vector<bool> sq(m, false);
    for (std::uint64_t r = 0; r < m; ++r) sq[(r * r) % m] = true;
    return sq;
}

const std::vector<bool>& square_table_1() {
    static const std::vector<bool> t = squares_mod(kM1);
    return t;
}
const std::vector<bool>& square_table_2() {
    static const std::vector<bool> t = squares_mod(kM2);
    return t;
}
const std::vector<bool>& square_table_3() {
    static const std::vector<bool> t = squares_mod(kM3);
    return t;
}

// D(a) mod m where D(a) = ((4a + c2) a + c1) a + c0.
inline std::uint64_t disc_mod(std::uint64_t a, std::uint64_t m, std::uint64_t c2,
                              std::uint64_t c1, std::uint64_t c0) {
    std::uint64_t d = (4 * a + c2) % m;
    d = (d * a + c1) % m;
    d = (d * a + c0) % m;
    return d;
}

struct SCoeffs {
    BigInt s, s2, s3;
    BigInt c2, c1, c0;  // discriminant cubic coefficients for this s
    BigInt lo, hi;      // |a| <= height * s^2, lo clipped to the sign bound
};

// D1(x) = 4x^3 + b2 x^2 + 2 b4 x + b6, the square-completed right-hand side.
BigInt d1_at(const WeierstrassModel& e, const BigInt& x) {
    return BigInt(((4 * x + e.b2()) * x + 2 * e.b4()) * x + e.b6());
}

// Largest integer L such that D1 < 0 on all of (-inf, L]. Every affine point
// has D1(x) >= 0, so x-values at or below L cannot occur and the scan may
// start at a = L * s^2 + 1. Certified by monotonicity: all critical points of
// D1 exceed M0 = -(1 + max(|b2|,|b4|)/6) by the Cauchy root bound on D1', so
// D1 is increasing on (-inf, M0] and a sign check there is conclusive.
BigInt negative_tail_bound(const WeierstrassModel& e) {
    const BigInt ab2 = abs(e.b2());
    const BigInt ab4 = abs(e.b4());
    const BigInt ab6 = abs(e.b6());
    const BigInt crit = std::max(ab2, ab4);
    BigInt m0 = -(1 + (crit + 5) / 6);
    if (d1_at(e, m0) < 0) return m0;
    // The smallest real root lies at or below M0; bisect for its floor inside
    // [root_lo, M0] where root_lo underruns the Cauchy bound of D1 itself.
    const BigInt coef = std::max({ab2, BigInt(2 * ab4), ab6});
    BigInt lo = -(2 + (coef + 3) / 4);
    assert(d1_at(e, lo) < 0);
    BigInt hi = m0;  // d1_at(hi) >= 0
    while (hi - lo > 1) {
        const BigInt mid = (lo + hi) / 2;
        (d1_at(e, mid) < 0 ? lo : hi) = mid;
    }
    return lo;
}

SCoeffs make_coeffs(const WeierstrassModel& e, const BigInt& s, const BigInt& height,
                    const BigInt& tail) {
    SCoeffs c;
    c.s = s;
    c.s2 = s * s;
    c.s3 = c.s2 * s;
    const BigInt s4 = c.s2 * c.s2, s6 = s4 * c.s2;
    c.c2 = e.b2() * c.s2;
    c.c1 = 2 * e.b4() * s4;
    c.c0 = e.b6() * s6;
    c.hi = height * c.s2;
    c.lo = std::max(BigInt(-c.hi), BigInt(tail * c.s2 + 1));
    return c;
}

// Exact acceptance test for x = a / s^2; emits zero, one or two points.
void exact_check(const WeierstrassModel& e, const SCoeffs& sc, const BigInt& a,
                 std::vector<CurvePoint>& out) {
    if (gcd(a, sc.s) != 1) return;
    const BigInt d = ((4 * a + sc.c2) * a + sc.c1) * a + sc.c0;
    if (d < 0) return;
    BigInt root;
    if (!is_perfect_square(d, root)) return;
    const BigInt ell = e.a1() * a * sc.s + e.a3() * sc.s3;
    // root^2 - ell^2 = 4 * (monic cubic), so the parities agree.
    BigInt num = root - ell;
    assert(num % 2 == 0);
    const BigRational x = make_rational(a, sc.s2);
    out.emplace_back(x, make_rational(num / 2, sc.s3));
    if (root != 0) out.emplace_back(x, make_rational((-root - ell) / 2, sc.s3));
}

std::vector<CurvePoint> scan_one_denominator(const WeierstrassModel& e,
                                             const SCoeffs& sc) {
    std::vector<CurvePoint> out;
    const BigInt range = sc.hi - sc.lo + 1;

    if (range <= kDirectLimit) {
        for (BigInt a = sc.lo; a <= sc.hi; ++a) exact_check(e, sc, a, out);
        return out;
    }

    const std::uint64_t c2m1 = mpz_fdiv_ui(sc.c2.get_mpz_t(), kM1);
    const std::uint64_t c1m1 = mpz_fdiv_ui(sc.c1.get_mpz_t(), kM1);
    const std::uint64_t c0m1 = mpz_fdiv_ui(sc.c0.get_mpz_t(), kM1);
    const std::uint64_t c2m2 = mpz_fdiv_ui(sc.c2.get_mpz_t(), kM2);
    const std::uint64_t c1m2 = mpz_fdiv_ui(sc.c1.get_mpz_t(), kM2);
    const std::uint64_t c0m2 = mpz_fdiv_ui(sc.c0.get_mpz_t(), kM2);
    const std::uint64_t c2m3 = mpz_fdiv_ui(sc.c2.get_mpz_t(), kM3);
    const std::uint64_t c1m3 = mpz_fdiv_ui(sc.c1.get_mpz_t(), kM3);
    const std::uint64_t c0m3 = mpz_fdiv_ui(sc.c0.get_mpz_t(), kM3);

    // Residues mod M1 whose discriminant value can be a square.
    std::vector<std::uint32_t> allowed;
    const auto& sq1 = square_table_1();
    for (std::uint64_t r = 0; r < kM1; ++r)
        if (sq1[disc_mod(r, kM1, c2m1, c1m1, c0m1)])
            allowed.push_back(static_cast<std::uint32_t>(r));

    std::vector<bool> ok2(kM2), ok3(kM3);
    const auto& sq2 = square_table_2();
    for (std::uint64_t r = 0; r < kM2; ++r)
        ok2[r] = sq2[disc_mod(r, kM2, c2m2, c1m2, c0m2)];
    const auto& sq3 = square_table_3();
    for (std::uint64_t r = 0; r < kM3; ++r)
        ok3[r] = sq3[disc_mod(r, kM3, c2m3, c1m3, c0m3)];

    // Walk blocks of M1 from floor(lo / M1) * M1 upward.
    BigInt base = sc.lo;
    mpz_fdiv_q_ui(base.get_mpz_t(), base.get_mpz_t(), kM1);
    base *= static_cast<unsigned long>(kM1);
    std::uint64_t base2 = mpz_fdiv_ui(base.get_mpz_t(), kM2);
    std::uint64_t base3 = mpz_fdiv_ui(base.get_mpz_t(), kM3);

    for (BigInt blk = base; blk <= sc.hi;
         blk += static_cast<unsigned long>(kM1), base2 = (base2 + kM1) % kM2,
                 base3 = (base3 + kM1) % kM3) {
        for (const std::uint32_t r : allowed) {
            std::uint64_t u2 = base2 + r;  // r < kM1 < kM2 < kM3
            if (u2 >= kM2) u2 -= kM2;
            if (!ok2[u2]) continue;
            std::uint64_t u3 = base3 + r;
            if (u3 >= kM3) u3 -= kM3;
            if (!ok3[u3]) continue;
            const BigInt a = blk + r;
            if (a < sc.lo || a > sc.hi) continue;
            exact_check(e, sc, a, out);
        }
    }
    return out;
}

}  // namespace

std::vector<BigInt> s_unit_denominators(const std::vector<BigInt>& s_primes,
                                        const BigInt& bound) {
    std::set<BigInt> seen;
    for (const BigInt& p : s_primes) {
        if (!is_probable_prime(p))
            throw std::domain_error("S must contain primes: " + to_string(p));
        if (!seen.insert(p).second)
            throw std::domain_error("duplicate prime in S: " + to_string(p));
    }
    std::vector<BigInt> out{BigInt(1)};
    for (const BigInt& p : s_primes) {
        const std::size_t have = out.size();
        for (std::size_t i = 0; i < have; ++i) {
            BigInt v = out[i] * p;
            while (v <= bound) {
                out.push_back(v);
                v *= p;
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<CurvePoint> search_s_integral_points(const WeierstrassModel& e,
                                                 const std::vector<BigInt>& s_primes,
                                                 const BigInt& height,
                                                 unsigned jobs) {
    if (height < 1) throw std::domain_error("height bound must be >= 1");
    const std::vector<BigInt> dens = s_unit_denominators(s_primes, height);
    const BigInt tail = negative_tail_bound(e);

    std::vector<std::vector<CurvePoint>> slots(dens.size());
    parallel_for(dens.size(), effective_jobs(jobs), [&](std::size_t i) {
        slots[i] = scan_one_denominator(e, make_coeffs(e, dens[i], height, tail));
    });

    std::vector<CurvePoint> out;
    for (auto& slot : slots)
        out.insert(out.end(), slot.begin(), slot.end());
    std::sort(out.begin(), out.end(), point_less);
    return out;
}

}  // namespace ecs
