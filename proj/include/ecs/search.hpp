#pragma once
/**
 * @file search.hpp
 * @brief Exhaustive search for S-integral points on a Weierstrass model.
 *
 * A point qualifies when x = a / s^2, y = b / s^3 with s a positive S-unit,
 * s <= height, |a| <= height * s^2 and gcd(a, s) = 1. The scan runs a
 * quadratic-residue sieve over three coprime moduli before any exact
 * square test, so only a ~1e-4 fraction of candidates reaches GMP.
 */
#include <vector>

#include "ecs/weierstrass.hpp"

namespace ecs {

// Positive integers <= bound whose prime divisors all lie in s_primes,
// sorted ascending. The empty prime set yields {1}.
std::vector<BigInt> s_unit_denominators(const std::vector<BigInt>& s_primes,
                                        const BigInt& bound);

// All qualifying points, sorted by (x, y). Throws std::domain_error when
// height < 1 or s_primes contains a non-prime or duplicate entry.
std::vector<CurvePoint> search_s_integral_points(
    const WeierstrassModel& e, const std::vector<BigInt>& s_primes,
    const BigInt& height, unsigned jobs = 1);

}  // namespace ecs
