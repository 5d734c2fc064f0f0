#include "ecs/eisenstein.hpp"

#include <stdexcept>

namespace ecs {

bool operator==(const Eisenstein& x, const Eisenstein& y) { return x.a == y.a && x.b == y.b; }

bool operator!=(const Eisenstein& x, const Eisenstein& y) { return !(x == y); }

Eisenstein operator+(const Eisenstein& x, const Eisenstein& y) {
    return {x.a + y.a, x.b + y.b};
}

Eisenstein operator-(const Eisenstein& x, const Eisenstein& y) {
    return {x.a - y.a, x.b - y.b};
}

Eisenstein operator-(const Eisenstein& x) { return {-x.a, -x.b}; }

Eisenstein operator*(const Eisenstein& x, const Eisenstein& y) {
    // (a1 + b1 w)(a2 + b2 w) with w^2 = -1 - w.
    return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b};
}

Eisenstein operator/(const Eisenstein& x, const Eisenstein& y) { return x * inverse(y); }

Eisenstein conjugate(const Eisenstein& z) { return {z.a - z.b, -z.b}; }

BigRational norm(const Eisenstein& z) { return z.a * z.a - z.a * z.b + z.b * z.b; }

Eisenstein inverse(const Eisenstein& z) {
    if (z.is_zero()) throw std::domain_error("inverse of zero");
    const BigRational n = norm(z);
    const Eisenstein c = conjugate(z);
    return {c.a / n, c.b / n};
}

std::string to_string(const Eisenstein& z) {
    if (z.b == 0) return to_string(z.a);
    std::string out;
    if (z.a != 0) out += to_string(z.a);
    if (z.b > 0 && !out.empty()) out += "+";
    if (z.b == -1) {
        out += "-";
    } else if (z.b != 1) {
        out += to_string(z.b) + "*";
    }
    out += "w";
    return out;
}

bool eisenstein_less(const Eisenstein& x, const Eisenstein& y) {
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
}

}  // namespace ecs
