#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "ecs/arith.hpp"
#include "ecs/rng.hpp"
#include "ecs/search.hpp"
#include "ecs/weierstrass.hpp"

using namespace ecs;

namespace {

const WeierstrassModel& curve_37a() {
    // y^2 + y = x^3 - x: rank one, generator (0, 0), discriminant 37.
    static const WeierstrassModel e(0, 0, 1, -1, 0);
    return e;
}

const WeierstrassModel& curve_k4() {
    // y^2 = x^3 + 4.
    static const WeierstrassModel e(0, 0, 0, 0, 4);
    return e;
}

// Brute-force oracle for the S-integral search, no sieving.
std::vector<CurvePoint> oracle_search(const WeierstrassModel& e,
                                      const std::vector<BigInt>& s_values,
                                      const BigInt& height) {
    std::vector<CurvePoint> out;
    for (const BigInt& s : s_values) {
        const BigInt s2 = s * s, s3 = s2 * s;
        const BigInt bound = height * s2;
        for (BigInt a = -bound; a <= bound; ++a) {
            if (gcd(a, s) != 1) continue;
            const BigInt d = 4 * a * a * a + e.b2() * s2 * a * a +
                             2 * e.b4() * s2 * s2 * a + e.b6() * s3 * s3;
            BigInt c;
            if (d < 0 || !is_perfect_square(d, c)) continue;
            const BigInt ell = e.a1() * a * s + e.a3() * s3;
            out.emplace_back(make_rational(a, s2), make_rational((c - ell) / 2, s3));
            if (c != 0)
                out.emplace_back(make_rational(a, s2), make_rational((-c - ell) / 2, s3));
        }
    }
    std::sort(out.begin(), out.end(), point_less);
    return out;
}

ModelMap random_unit_map(Rng& rng) {
    ModelMap m;
    m.u = BigRational(1);
    m.r = BigRational(rng.range(-5, 5));
    m.s = BigRational(rng.range(-5, 5));
    m.t = BigRational(rng.range(-5, 5));
    return m;
}

}  // namespace

TEST_CASE("invariants of frozen curves") {
    const WeierstrassModel& e = curve_k4();
    CHECK(e.b2() == 0);
    CHECK(e.b4() == 0);
    CHECK(e.b6() == 16);
    CHECK(e.b8() == 0);
    CHECK(e.c4() == 0);
    CHECK(e.c6() == -3456);
    CHECK(e.discriminant() == -6912);
    CHECK(e.j_invariant() == 0);

    const WeierstrassModel& f = curve_37a();
    CHECK(f.b2() == 0);
    CHECK(f.b4() == -2);
    CHECK(f.b6() == 1);
    CHECK(f.b8() == -1);
    CHECK(f.c4() == 48);
    CHECK(f.c6() == -216);
    CHECK(f.discriminant() == 37);
    CHECK(f.j_invariant() == make_rational(110592, 37));

    CHECK_THROWS_AS(WeierstrassModel(0, 0, 0, 0, 0), std::domain_error);  // singular
}

TEST_CASE("on-curve membership") {
    const WeierstrassModel& e = curve_37a();
    CHECK(on_curve(e, CurvePoint::infinity()));
    CHECK(on_curve(e, CurvePoint(BigRational(0), BigRational(0))));
    CHECK(on_curve(e, CurvePoint(BigRational(1), BigRational(0))));
    CHECK_FALSE(on_curve(e, CurvePoint(BigRational(1), BigRational(1))));
    CHECK(on_curve(e, CurvePoint(make_rational(1, 4), make_rational(-5, 8))));
}

TEST_CASE("group law on a rank-one curve") {
    const WeierstrassModel& e = curve_37a();
    const CurvePoint p(BigRational(0), BigRational(0));

    // Frozen small multiples, each verified on the curve.
    const CurvePoint p2 = add_points(e, p, p);
    CHECK(p2 == CurvePoint(BigRational(1), BigRational(0)));
    const CurvePoint p3 = add_points(e, p2, p);
    CHECK(p3 == CurvePoint(BigRational(-1), BigRational(-1)));
    const CurvePoint p4 = add_points(e, p3, p);
    CHECK(p4 == CurvePoint(BigRational(2), BigRational(-3)));
    const CurvePoint p5 = add_points(e, p4, p);
    CHECK(p5 == CurvePoint(make_rational(1, 4), make_rational(-5, 8)));
    const CurvePoint p6 = add_points(e, p3, p3);
    CHECK(on_curve(e, p6));
    CHECK(p6 == CurvePoint(BigRational(6), BigRational(14)));

    CHECK(scalar_multiply(e, 6, p) == p6);
    CHECK(scalar_multiply(e, 5, p) == p5);
    CHECK(scalar_multiply(e, 0, p) == CurvePoint::infinity());
    CHECK(add_points(e, p, negate(e, p)) == CurvePoint::infinity());
    CHECK(negate(e, p) == CurvePoint(BigRational(0), BigRational(-1)));
}

TEST_CASE("group law is a homomorphism from Z") {
    // a1 = 1 exercises every term of the long-form formulas.
    const WeierstrassModel e(1, 0, 0, 0, 1);
    const CurvePoint p(BigRational(0), BigRational(1));
    REQUIRE(on_curve(e, p));

    std::vector<CurvePoint> mult(17, CurvePoint::infinity());  // mult[k+8] = kP
    for (int k = -8; k <= 8; ++k) mult[static_cast<std::size_t>(k + 8)] = scalar_multiply(e, k, p);
    for (const auto& q : mult) CHECK(on_curve(e, q));

    Rng rng(0x47726f75704c61ULL);
    for (int iter = 0; iter < 200; ++iter) {
        const long a = rng.range(-4, 4), b = rng.range(-4, 4);
        const CurvePoint lhs = add_points(e, mult[static_cast<std::size_t>(a + 8)],
                                          mult[static_cast<std::size_t>(b + 8)]);
        CHECK(lhs == mult[static_cast<std::size_t>(a + b + 8)]);
    }
    // Negation matches inverse multiples.
    for (int k = -8; k <= 8; ++k)
        CHECK(negate(e, mult[static_cast<std::size_t>(k + 8)]) ==
              mult[static_cast<std::size_t>(-k + 8)]);
}

TEST_CASE("two-torsion arithmetic") {
    const WeierstrassModel e(0, 0, 0, -1, 0);  // y^2 = x^3 - x
    const CurvePoint t0(BigRational(0), BigRational(0));
    const CurvePoint t1(BigRational(1), BigRational(0));
    const CurvePoint tm(BigRational(-1), BigRational(0));
    CHECK(add_points(e, t0, t0) == CurvePoint::infinity());
    CHECK(scalar_multiply(e, 2, t1) == CurvePoint::infinity());
    CHECK(add_points(e, t0, t1) == tm);
}

TEST_CASE("group law rejects off-curve points") {
    const WeierstrassModel& e = curve_37a();
    const CurvePoint bad(BigRational(5), BigRational(5));
    CHECK_THROWS_AS(add_points(e, bad, bad), std::domain_error);
    CHECK_THROWS_AS(negate(e, bad), std::domain_error);
    CHECK_THROWS_AS(scalar_multiply(e, 3, bad), std::domain_error);
}

TEST_CASE("model map transport and composition") {
    const WeierstrassModel& e = curve_37a();
    const CurvePoint p(BigRational(0), BigRational(0));
    Rng rng(0x4d6f64656c4d61ULL);

    for (int iter = 0; iter < 100; ++iter) {
        const ModelMap m1 = random_unit_map(rng);
        const ModelMap m2 = random_unit_map(rng);
        const WeierstrassModel e1 = apply_model_map(e, m1);
        const WeierstrassModel e2 = apply_model_map(e1, m2);
        CHECK(apply_model_map(e, m1.then(m2)) == e2);

        // Invariants are preserved at u = 1.
        CHECK(e1.c4() == e.c4());
        CHECK(e1.c6() == e.c6());
        CHECK(e1.discriminant() == e.discriminant());
        CHECK(e1.j_invariant() == e.j_invariant());

        // Point transport commutes with composition and inverts cleanly.
        const CurvePoint q = m1.apply(p);
        CHECK(on_curve(e1, q));
        CHECK(m1.then(m2).apply(p) == m2.apply(q));
        CHECK(m1.inverse().apply(q) == p);
        CHECK(m1.then(m1.inverse()).is_identity());
    }
}

TEST_CASE("rescaling a short model") {
    // (x, y) -> (c^2 x, c^3 y) turns y^2 = x^3 + Ax + B into
    // y^2 = x^3 + c^4 A x + c^6 B.
    const WeierstrassModel e(0, 0, 0, 0, -2);
    const ModelMap m = ModelMap::rescale(3);
    const WeierstrassModel big = apply_model_map(e, m);
    CHECK(big == WeierstrassModel(0, 0, 0, 0, -1458));
    CHECK(big.discriminant() == e.discriminant() * pow_int(3, 12));

    const CurvePoint p(BigRational(3), BigRational(5));
    REQUIRE(on_curve(e, p));
    const CurvePoint q = m.apply(p);
    CHECK(q == CurvePoint(BigRational(27), BigRational(135)));
    CHECK(on_curve(big, q));

    // Shrinking maps with non-integral images are rejected.
    ModelMap down;
    down.u = BigRational(2);
    down.r = down.s = down.t = BigRational(0);
    CHECK_THROWS_AS(apply_model_map(curve_37a(), down), std::domain_error);
    CHECK(apply_model_map(big, ModelMap::rescale(3).inverse()) == e);
}

TEST_CASE("division polynomials: frozen low indices") {
    const WeierstrassModel& e = curve_k4();

    const DivisionPolynomial psi2 = division_polynomial(e, 2);
    CHECK(psi2.has_z_factor);
    CHECK(psi2.x_part == MultiPoly<BigRational>::constant(1, BigRational(1)));

    // psi_2^2 reduces to 4x^3 + b2 x^2 + 2 b4 x + b6 = 4x^3 + 16.
    MultiPoly<BigRational> b(1);
    b.add_term({3}, BigRational(4));
    b.add_term({0}, BigRational(16));
    CHECK(two_torsion_cubic(e) == b);

    const DivisionPolynomial psi3 = division_polynomial(e, 3);
    CHECK_FALSE(psi3.has_z_factor);
    MultiPoly<BigRational> expect3(1);
    expect3.add_term({4}, BigRational(3));
    expect3.add_term({1}, BigRational(48));
    CHECK(psi3.x_part == expect3);

    // (0, 2) is 3-torsion: psi_3 vanishes there and 3P = O.
    const CurvePoint p(BigRational(0), BigRational(2));
    REQUIRE(on_curve(e, p));
    CHECK(evaluate_psi(e, 3, p) == 0);
    CHECK(scalar_multiply(e, 3, p) == CurvePoint::infinity());
    CHECK(scalar_multiply(e, 2, p) != CurvePoint::infinity());

    CHECK_THROWS_AS(division_polynomial(e, 0), std::domain_error);
}

TEST_CASE("division polynomial degrees") {
    const WeierstrassModel& e = curve_37a();
    for (unsigned n = 1; n <= 10; ++n) {
        const DivisionPolynomial d = division_polynomial(e, n);
        CHECK(d.has_z_factor == (n % 2 == 0));
        const unsigned expected =
            n % 2 == 1 ? (n * n - 1) / 2 : (n * n - 4) / 2;
        if (n == 1 || n == 2)
            CHECK(d.x_part.total_degree() == 0);
        else
            CHECK(d.x_part.total_degree() == expected);
    }
}

TEST_CASE("multiple formula x(nP) = x - psi_(n-1) psi_(n+1) / psi_n^2") {
    const WeierstrassModel& e = curve_37a();
    const CurvePoint p(BigRational(0), BigRational(0));
    for (unsigned n = 2; n <= 8; ++n) {
        const CurvePoint np = scalar_multiply(e, n, p);
        REQUIRE_FALSE(np.is_infinity());
        const BigRational psi_n = evaluate_psi(e, n, p);
        REQUIRE(psi_n != 0);
        const BigRational expected =
            p.x() - evaluate_psi(e, n - 1, p) * evaluate_psi(e, n + 1, p) /
                        (psi_n * psi_n);
        CHECK(np.x() == expected);
    }
}

TEST_CASE("s-unit denominator enumeration") {
    CHECK(s_unit_denominators({}, 100) == std::vector<BigInt>{BigInt(1)});
    const auto d23 = s_unit_denominators({BigInt(2), BigInt(3)}, 20);
    const std::vector<BigInt> expect{BigInt(1), BigInt(2),  BigInt(3),  BigInt(4),
                                     BigInt(6), BigInt(8),  BigInt(9),  BigInt(12),
                                     BigInt(16), BigInt(18)};
    CHECK(d23 == expect);
    CHECK_THROWS_AS(s_unit_denominators({BigInt(4)}, 10), std::domain_error);
    CHECK_THROWS_AS(s_unit_denominators({BigInt(2), BigInt(2)}, 10), std::domain_error);
}

TEST_CASE("integral point search: frozen sets") {
    const WeierstrassModel e(0, 0, 0, 0, 1);  // y^2 = x^3 + 1
    const auto pts = search_s_integral_points(e, {}, 100);
    std::vector<CurvePoint> expect{
        CurvePoint(BigRational(-1), BigRational(0)),
        CurvePoint(BigRational(0), BigRational(-1)),
        CurvePoint(BigRational(0), BigRational(1)),
        CurvePoint(BigRational(2), BigRational(-3)),
        CurvePoint(BigRational(2), BigRational(3))};
    CHECK(pts == expect);

    const WeierstrassModel f(0, 0, 0, 0, -2);  // y^2 = x^3 - 2
    const auto pts2 = search_s_integral_points(f, {}, 10);
    CHECK(pts2 == std::vector<CurvePoint>{CurvePoint(BigRational(3), BigRational(-5)),
                                          CurvePoint(BigRational(3), BigRational(5))});

    CHECK_THROWS_AS(search_s_integral_points(e, {}, 0), std::domain_error);
}

TEST_CASE("integral point search with denominators matches the oracle") {
    const WeierstrassModel e(0, 0, 0, 0, 2);  // has (17/4, 71/8)
    const BigInt h(20);
    const auto got = search_s_integral_points(e, {BigInt(2)}, h);
    const auto expect = oracle_search(e, s_unit_denominators({BigInt(2)}, h), h);
    CHECK(got == expect);

    const CurvePoint special(make_rational(17, 4), make_rational(71, 8));
    CHECK(std::find(got.begin(), got.end(), special) != got.end());
    for (const auto& p : got) CHECK(on_curve(e, p));

    // A curve with nonzero a1, a3 and S = {2, 3}.
    const WeierstrassModel f(1, 0, 1, 0, 1);
    const auto got2 = search_s_integral_points(f, {BigInt(2), BigInt(3)}, 12);
    const auto expect2 =
        oracle_search(f, s_unit_denominators({BigInt(2), BigInt(3)}, 12), 12);
    CHECK(got2 == expect2);
    for (const auto& p : got2) CHECK(on_curve(f, p));
}

TEST_CASE("integral point search exercises the sieve path") {
    // Range 2H+1 exceeds the direct-scan threshold, forcing the block sieve.
    const WeierstrassModel e(0, 0, 0, 0, 1);
    const BigInt h(200000);
    const auto got = search_s_integral_points(e, {}, h, 4);
    const auto expect = oracle_search(e, {BigInt(1)}, h);
    CHECK(got == expect);
    CHECK(got.size() == 5);
}
