#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <string>
#include <vector>

#include "ecs/arith.hpp"
#include "ecs/eisenstein.hpp"
#include "ecs/factor.hpp"
#include "ecs/rng.hpp"

using namespace ecs;

namespace {

// Independent oracle: fractions kept unreduced; equality by cross product.
struct Frac {
    BigInt n, d;  // d != 0, sign unconstrained
    Frac operator+(const Frac& o) const { return {n * o.d + o.n * d, d * o.d}; }
    Frac operator-(const Frac& o) const { return {n * o.d - o.n * d, d * o.d}; }
    Frac operator*(const Frac& o) const { return {n * o.n, d * o.d}; }
    bool same_value(const BigRational& q) const {
        return n * denominator(q) == numerator(q) * d;
    }
};

// Independent oracle: factorization by pure trial division, no sieving.
std::vector<std::pair<BigInt, unsigned>> trial_factor(BigInt m) {
    std::vector<std::pair<BigInt, unsigned>> out;
    if (m < 0) m = -m;
    for (BigInt p = 2; p * p <= m; ++p) {
        unsigned e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (e > 0) out.emplace_back(p, e);
    }
    if (m > 1) out.emplace_back(m, 1);
    return out;
}

BigInt rand_bigint(Rng& rng, long lo, long hi) { return BigInt(rng.range(lo, hi)); }

}  // namespace

TEST_CASE("parse and print integers") {
    CHECK(parse_bigint("-432") == BigInt(-432));
    CHECK(parse_bigint("0") == 0);
    CHECK(to_string(BigInt(-432)) == "-432");
    CHECK(parse_bigint("123456789012345678901234567890") ==
          BigInt("123456789012345678901234567890"));
    CHECK_THROWS_AS(parse_bigint("12x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_bigint(""), std::invalid_argument);
}

TEST_CASE("parse and print rationals") {
    CHECK(parse_rational("50/27") == make_rational(50, 27));
    CHECK(parse_rational("-3/2") == make_rational(-3, 2));
    CHECK(parse_rational("7") == BigRational(7));
    CHECK(to_string(make_rational(50, 27)) == "50/27");
    CHECK(to_string(BigRational(7)) == "7");
    CHECK(to_string(make_rational(-3, 2)) == "-3/2");
    CHECK_THROWS_AS(parse_rational("1/0"), std::domain_error);
    CHECK_THROWS_AS(parse_rational("a/b"), std::invalid_argument);
}

TEST_CASE("rational normalization") {
    const BigRational q = make_rational(6, -4);
    CHECK(numerator(q) == -3);
    CHECK(denominator(q) == 2);
    CHECK(to_string(q) == "-3/2");
    CHECK_THROWS_AS(make_rational(1, 0), std::domain_error);
    CHECK(is_integer(make_rational(8, 2)));
    CHECK_FALSE(is_integer(make_rational(8, 3)));
}

TEST_CASE("rational arithmetic against an unreduced-fraction oracle") {
    Rng rng(0x41726974686d31ULL);
    for (int iter = 0; iter < 1000; ++iter) {
        const BigInt n1 = rand_bigint(rng, -500, 500);
        const BigInt n2 = rand_bigint(rng, -500, 500);
        BigInt d1 = rand_bigint(rng, 1, 400);
        BigInt d2 = rand_bigint(rng, 1, 400);
        if (rng.coin()) d1 = -d1;
        if (rng.coin()) d2 = -d2;

        const Frac f1{n1, d1}, f2{n2, d2};
        const BigRational q1 = make_rational(n1, d1), q2 = make_rational(n2, d2);

        CHECK((f1 + f2).same_value(q1 + q2));
        CHECK((f1 - f2).same_value(q1 - q2));
        CHECK((f1 * f2).same_value(q1 * q2));
        if (n2 != 0) {
            const Frac quotient{n1 * d2, d1 * n2};
            CHECK(quotient.same_value(q1 / q2));
        }
    }
}

TEST_CASE("p-adic valuations") {
    CHECK(p_valuation(BigInt(-432), 2) == 4);
    CHECK(p_valuation(BigInt(-432), 3) == 3);
    CHECK(p_valuation(BigInt(-432), 5) == 0);
    CHECK(p_valuation(BigInt(0), 7) == val_infinity);
    CHECK(p_valuation(make_rational(50, 27), 3) == -3);
    CHECK(p_valuation(make_rational(50, 27), 2) == 1);
    CHECK(p_valuation(make_rational(50, 27), 5) == 2);
    CHECK(p_valuation(BigRational(0), 5) == val_infinity);

    Rng rng(0x56616c7561746eULL);
    for (int iter = 0; iter < 300; ++iter) {
        const BigInt p = (iter % 3 == 0) ? 2 : (iter % 3 == 1 ? 3 : 7);
        const long e = rng.range(0, 9);
        BigInt cofactor = rand_bigint(rng, 1, 9999);
        while (cofactor % p == 0) cofactor += 1;
        const BigInt n = pow_int(p, static_cast<unsigned long>(e)) * cofactor;
        CHECK(p_valuation(n, p) == e);
        CHECK(p_valuation(BigInt(-n), p) == e);
    }
}

TEST_CASE("squares and integer square roots") {
    CHECK(is_perfect_square(BigInt(0)));
    CHECK(is_perfect_square(BigInt(1)));
    CHECK(is_perfect_square(BigInt(49)));
    CHECK_FALSE(is_perfect_square(BigInt(2)));
    CHECK_FALSE(is_perfect_square(BigInt(-4)));
    BigInt root;
    CHECK(is_perfect_square(BigInt("49000000000000"), root));
    CHECK(root == BigInt(7000000));
    CHECK(isqrt(BigInt(10)) == 3);
    CHECK(isqrt(BigInt(16)) == 4);

    Rng rng(0x53717561726573ULL);
    for (int iter = 0; iter < 500; ++iter) {
        const BigInt r = rand_bigint(rng, 0, 1000000);
        CHECK(is_perfect_square(r * r));
        CHECK(isqrt(r * r) == r);
        CHECK(isqrt(r * r + 1) == r);
    }
}

TEST_CASE("integer powers and rational powers") {
    CHECK(pow_int(2, 10) == 1024);
    CHECK(pow_int(-3, 3) == -27);
    CHECK(pow_int(5, 0) == 1);
    CHECK(pow_rat(make_rational(2, 3), -2) == make_rational(9, 4));
    CHECK(pow_rat(make_rational(-1, 2), 3) == make_rational(-1, 8));
    CHECK_THROWS_AS(pow_rat(BigRational(0), -1), std::domain_error);
}

TEST_CASE("modular arithmetic") {
    CHECK(mod_floor(-7, 5) == 3);
    CHECK(mod_floor(12, 5) == 2);
    CHECK(mod_inverse(3, 7) == 5);
    CHECK_THROWS_AS(mod_inverse(2, 4), std::domain_error);
    CHECK(mod_pow(2, 10, 1000) == 24);
    CHECK(mod_pow(2, -1, 7) == 4);

    Rng rng(0x4d6f64756c6172ULL);
    for (int iter = 0; iter < 200; ++iter) {
        const BigInt m = rand_bigint(rng, 2, 10000);
        BigInt a = rand_bigint(rng, -10000, 10000);
        const BigInt r = mod_floor(a, m);
        CHECK(r >= 0);
        CHECK(r < m);
        CHECK((a - r) % m == 0);
    }
}

TEST_CASE("primality on known values") {
    CHECK(is_probable_prime(2));
    CHECK(is_probable_prime(3));
    CHECK(is_probable_prime(97));
    CHECK(is_probable_prime(BigInt("2147483647")));           // 2^31 - 1
    CHECK(is_probable_prime(BigInt("170141183460469231731687303715884105727")));  // 2^127 - 1
    CHECK_FALSE(is_probable_prime(1));
    CHECK_FALSE(is_probable_prime(0));
    CHECK_FALSE(is_probable_prime(-7));
    CHECK_FALSE(is_probable_prime(561));    // Carmichael
    CHECK_FALSE(is_probable_prime(1105));   // Carmichael
    CHECK_FALSE(is_probable_prime(BigInt("2147483649")));
}

TEST_CASE("factorization: frozen values") {
    const PrimeFactorization f1 = factor_integer(-432);
    CHECK(f1.sign == -1);
    REQUIRE(f1.factors.size() == 2);
    CHECK(f1.factors[0] == std::make_pair(BigInt(2), 4u));
    CHECK(f1.factors[1] == std::make_pair(BigInt(3), 3u));

    const PrimeFactorization f2 = factor_integer(21616);
    CHECK(f2.sign == 1);
    REQUIRE(f2.factors.size() == 3);
    CHECK(f2.factors[0] == std::make_pair(BigInt(2), 4u));
    CHECK(f2.factors[1] == std::make_pair(BigInt(7), 1u));
    CHECK(f2.factors[2] == std::make_pair(BigInt(193), 1u));

    const PrimeFactorization f3 = factor_integer(1);
    CHECK(f3.sign == 1);
    CHECK(f3.factors.empty());

    CHECK_THROWS_AS(factor_integer(0), std::domain_error);
}

TEST_CASE("factorization against a trial-division oracle") {
    Rng rng(0x466163746f7273ULL);
    for (int iter = 0; iter < 300; ++iter) {
        BigInt n = rand_bigint(rng, -1000000, 1000000);
        if (n == 0) n = 1;
        const PrimeFactorization f = factor_integer(n);
        CHECK(f.reassemble() == n);
        CHECK(f.sign == (n < 0 ? -1 : 1));
        const auto oracle = trial_factor(n);
        REQUIRE(f.factors.size() == oracle.size());
        for (std::size_t i = 0; i < oracle.size(); ++i) {
            CHECK(f.factors[i].first == oracle[i].first);
            CHECK(f.factors[i].second == oracle[i].second);
        }
        for (const auto& [p, e] : f.factors) CHECK(is_probable_prime(p));
    }
}

TEST_CASE("factorization beyond the trial range") {
    // Both prime factors exceed the 1e6 trial bound.
    const BigInt p("1000003"), q("1000033");
    const PrimeFactorization f = factor_integer(p * q * 8);
    REQUIRE(f.factors.size() == 3);
    CHECK(f.factors[0] == std::make_pair(BigInt(2), 3u));
    CHECK(f.factors[1] == std::make_pair(p, 1u));
    CHECK(f.factors[2] == std::make_pair(q, 1u));

    // Square of a large prime.
    const PrimeFactorization g = factor_integer(p * p);
    REQUIRE(g.factors.size() == 1);
    CHECK(g.factors[0] == std::make_pair(p, 2u));
}

TEST_CASE("prime divisor lists, S-units, squarefree tests") {
    const std::vector<BigInt> s23{BigInt(2), BigInt(3)};
    CHECK(prime_divisors(-432) == std::vector<BigInt>{BigInt(2), BigInt(3)});
    CHECK(is_s_unit(864, s23));
    CHECK(is_s_unit(-8, s23));
    CHECK(is_s_unit(1, {}));
    CHECK_FALSE(is_s_unit(10, s23));
    CHECK_FALSE(is_s_unit(7, {}));

    CHECK(is_squarefree(30));
    CHECK(is_squarefree(-30));
    CHECK(is_squarefree(1));
    CHECK_FALSE(is_squarefree(12));
    CHECK_FALSE(is_squarefree(0));
    CHECK_FALSE(is_squarefree(-9));
}

TEST_CASE("eisenstein ring identities") {
    const Eisenstein w = Eisenstein::omega();
    CHECK(w * w + w + Eisenstein(1) == Eisenstein(0));
    CHECK(w * w * w == Eisenstein(1));
    CHECK(norm(Eisenstein(BigRational(1), BigRational(2))) == 3);
    CHECK(conjugate(w) == w * w);
    CHECK(to_string(w) == "w");
    CHECK(to_string(Eisenstein(BigRational(1), BigRational(-2))) == "1-2*w");
    CHECK(Eisenstein(5).is_rational());
    CHECK_FALSE(w.is_rational());
    CHECK_THROWS_AS(inverse(Eisenstein(0)), std::domain_error);
}

TEST_CASE("eisenstein arithmetic properties") {
    Rng rng(0x456973656e7374ULL);
    for (int iter = 0; iter < 500; ++iter) {
        const Eisenstein z1(make_rational(rng.range(-50, 50), rng.range(1, 20)),
                            make_rational(rng.range(-50, 50), rng.range(1, 20)));
        const Eisenstein z2(make_rational(rng.range(-50, 50), rng.range(1, 20)),
                            make_rational(rng.range(-50, 50), rng.range(1, 20)));
        CHECK(norm(z1 * z2) == norm(z1) * norm(z2));
        CHECK(conjugate(z1 * z2) == conjugate(z1) * conjugate(z2));
        CHECK(norm(z1) == z1.a * z1.a - z1.a * z1.b + z1.b * z1.b);
        if (!z1.is_zero()) {
            CHECK(z1 * inverse(z1) == Eisenstein(1));
            CHECK(z2 / z1 * z1 == z2);
        }
        // Norm is multiplicative and positive definite.
        if (!z1.is_zero()) CHECK(norm(z1) > 0);
    }
}
