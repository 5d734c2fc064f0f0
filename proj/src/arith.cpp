#include "ecs/arith.hpp"

#include <stdexcept>

namespace ecs {

BigInt parse_bigint(const std::string& s) {
    BigInt n;
    if (s.empty() || mpz_set_str(n.get_mpz_t(), s.c_str(), 10) != 0) {
        throw std::invalid_argument("malformed integer literal: '" + s + "'");
    }
    return n;
}

BigRational parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
        return BigRational(parse_bigint(s));
    }
    const BigInt num = parse_bigint(s.substr(0, slash));
    const BigInt den = parse_bigint(s.substr(slash + 1));
    return make_rational(num, den);
}

std::string to_string(const BigInt& n) { return n.get_str(); }

std::string to_string(const BigRational& q) { return q.get_str(); }

BigRational make_rational(const BigInt& p, const BigInt& q) {
    if (q == 0) throw std::domain_error("rational with zero denominator");
    BigRational r(p, q);
    r.canonicalize();
    return r;
}

BigInt numerator(const BigRational& q) { return BigInt(q.get_num()); }

BigInt denominator(const BigRational& q) { return BigInt(q.get_den()); }

bool is_integer(const BigRational& q) { return q.get_den() == 1; }

long p_valuation(const BigInt& n, const BigInt& p) {
    if (p < 2) throw std::domain_error("valuation base must be >= 2");
    if (n == 0) return val_infinity;
    BigInt reduced;
    return static_cast<long>(mpz_remove(reduced.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

long p_valuation(const BigRational& q, const BigInt& p) {
    if (q == 0) return val_infinity;
    // Canonical form: p divides at most one of numerator and denominator.
    return p_valuation(numerator(q), p) - p_valuation(denominator(q), p);
}

bool is_perfect_square(const BigInt& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

bool is_perfect_square(const BigInt& n, BigInt& root) {
    if (!is_perfect_square(n)) return false;
    root = isqrt(n);
    return true;
}

BigInt isqrt(const BigInt& n) {
    if (n < 0) throw std::domain_error("isqrt of negative value");
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

BigInt pow_int(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

BigRational pow_rat(const BigRational& base, long e) {
    if (e < 0) {
        if (base == 0) throw std::domain_error("0 raised to a negative power");
        return pow_rat(BigRational(1) / base, -e);
    }
    BigRational r(pow_int(numerator(base), static_cast<unsigned long>(e)),
                  pow_int(denominator(base), static_cast<unsigned long>(e)));
    r.canonicalize();
    return r;
}

BigInt mod_floor(const BigInt& a, const BigInt& m) {
    if (m <= 0) throw std::domain_error("modulus must be positive");
    BigInt r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

BigInt mod_pow(const BigInt& base, const BigInt& e, const BigInt& m) {
    if (m <= 0) throw std::domain_error("modulus must be positive");
    if (e < 0) return mod_pow(mod_inverse(base, m), -e, m);
    BigInt r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

BigInt mod_inverse(const BigInt& a, const BigInt& m) {
    BigInt r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
        throw std::domain_error("not invertible: gcd(" + to_string(a) + ", " + to_string(m) +
                                ") != 1");
    }
    return r;
}

}  // namespace ecs
