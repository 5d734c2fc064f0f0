#pragma once
/**
 * @file factor.hpp
 * @brief Integer factorization: trial division below 1e6, then Brent's
 *        Pollard rho with Miller-Rabin primality certification.
 *
 * The Miller-Rabin witness set {2,3,...,37} is deterministic for inputs
 * below 3.317e24; desk-scale discriminants stay far under that bound.
 */
#include <utility>
#include <vector>

#include "ecs/arith.hpp"

namespace ecs {

struct PrimeFactorization {
    int sign = 1;  // +1 or -1; zero inputs are rejected
    std::vector<std::pair<BigInt, unsigned>> factors;  // sorted by prime, exponents >= 1

    BigInt reassemble() const;
};

bool is_probable_prime(const BigInt& n);

// n != 0 required; throws std::domain_error on 0.
PrimeFactorization factor_integer(const BigInt& n);

// Distinct prime divisors of |n|, sorted ascending. n != 0 required.
std::vector<BigInt> prime_divisors(const BigInt& n);

// True when every prime divisor of n lies in s. n != 0 required.
bool is_s_unit(const BigInt& n, const std::vector<BigInt>& s);

bool is_squarefree(const BigInt& n);

}  // namespace ecs
