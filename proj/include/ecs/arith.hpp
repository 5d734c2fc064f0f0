#pragma once
/**
 * @file arith.hpp
 * @brief Exact integer and rational arithmetic primitives (GMP-backed).
 *
 * BigRational values are always canonical: gcd(num, den) = 1, den >= 1,
 * zero is 0/1.  No operation here touches floating point.
 */
#include <gmpxx.h>

#include <limits>
#include <string>

namespace ecs {

using BigInt = mpz_class;
using BigRational = mpq_class;

// Sentinel returned by p_valuation at 0; larger than any finite valuation.
inline constexpr long val_infinity = std::numeric_limits<long>::max();

BigInt parse_bigint(const std::string& s);

// Accepts "n" or "p/q" (either part signed). Throws std::invalid_argument on
// malformed input and std::domain_error on zero denominator.
BigRational parse_rational(const std::string& s);

std::string to_string(const BigInt& n);
std::string to_string(const BigRational& q);  // "p/q", or "n" when integral

// Canonical p/q. Throws std::domain_error when q == 0.
BigRational make_rational(const BigInt& p, const BigInt& q);

BigInt numerator(const BigRational& q);
BigInt denominator(const BigRational& q);
bool is_integer(const BigRational& q);

// v_p(n) for p >= 2; n == 0 yields val_infinity.
long p_valuation(const BigInt& n, const BigInt& p);
long p_valuation(const BigRational& q, const BigInt& p);

// Exact square tests; root receives the nonnegative square root on success.
bool is_perfect_square(const BigInt& n);
bool is_perfect_square(const BigInt& n, BigInt& root);
BigInt isqrt(const BigInt& n);  // floor(sqrt(n)), n >= 0

BigInt pow_int(const BigInt& base, unsigned long e);
BigRational pow_rat(const BigRational& base, long e);  // negative e inverts

// Nonnegative residue a mod m, m > 0.
BigInt mod_floor(const BigInt& a, const BigInt& m);
BigInt mod_pow(const BigInt& base, const BigInt& e, const BigInt& m);
BigInt mod_inverse(const BigInt& a, const BigInt& m);  // gcd(a,m)=1 required

}  // namespace ecs
