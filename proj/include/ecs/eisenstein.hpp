#pragma once
/**
 * @file eisenstein.hpp
 * @brief Exact arithmetic in Q(w) where w^2 + w + 1 = 0.
 */
#include <string>
#include <utility>

#include "ecs/arith.hpp"

namespace ecs {

// a + b*w with w a primitive cube root of unity. Immutable value semantics.
struct Eisenstein {
    BigRational a;
    BigRational b;

    Eisenstein() : a(0), b(0) {}
    Eisenstein(long v) : a(v), b(0) {}  // NOLINT: implicit, ring embeds Z
    Eisenstein(BigRational a_, BigRational b_) : a(std::move(a_)), b(std::move(b_)) {}
    static Eisenstein from_rational(const BigRational& r) { return {r, BigRational(0)}; }
    static Eisenstein omega() { return {BigRational(0), BigRational(1)}; }

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }
};

bool operator==(const Eisenstein& x, const Eisenstein& y);
bool operator!=(const Eisenstein& x, const Eisenstein& y);
Eisenstein operator+(const Eisenstein& x, const Eisenstein& y);
Eisenstein operator-(const Eisenstein& x, const Eisenstein& y);
Eisenstein operator-(const Eisenstein& x);
Eisenstein operator*(const Eisenstein& x, const Eisenstein& y);
Eisenstein operator/(const Eisenstein& x, const Eisenstein& y);

Eisenstein conjugate(const Eisenstein& z);  // a + b*w^2 = (a-b) - b*w
BigRational norm(const Eisenstein& z);      // a^2 - ab + b^2; zero only at zero
Eisenstein inverse(const Eisenstein& z);    // throws std::domain_error at zero

// "a", "b*w", or "a+b*w"; used by reports and tests.
std::string to_string(const Eisenstein& z);

// Strict total order (a, then b); gives containers a deterministic layout.
bool eisenstein_less(const Eisenstein& x, const Eisenstein& y);

}  // namespace ecs
