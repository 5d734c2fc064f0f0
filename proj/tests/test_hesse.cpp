#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "ecs/arith.hpp"
#include "ecs/hesse.hpp"
#include "ecs/rng.hpp"
#include "ecs/weierstrass.hpp"

using namespace ecs;

namespace {

Eisenstein eis(long a, long b) {
    return Eisenstein(BigRational(a), BigRational(b));
}

WeierstrassModel mk(long a1, long a2, long a3, long a4, long a6) {
    return WeierstrassModel(BigInt(a1), BigInt(a2), BigInt(a3), BigInt(a4),
                            BigInt(a6));
}

PlanePoint plane(long x, long y, long z) {
    return PlanePoint{eis(x, 0), eis(y, 0), eis(z, 0)};
}

bool contains_point(const std::vector<PlanePoint>& pts, const PlanePoint& p) {
    return std::any_of(pts.begin(), pts.end(), [&](const PlanePoint& q) {
        return plane_point_equal(p, q);
    });
}

bool contains_param(
    const std::vector<std::pair<Eisenstein, Eisenstein>>& params,
    const Eisenstein& lam, const Eisenstein& mu) {
    return std::any_of(params.begin(), params.end(), [&](const auto& pr) {
        return (pr.first * mu - lam * pr.second).is_zero();
    });
}

Eisenstein random_eis(Rng& rng) {
    return eis(rng.range(-9, 9), rng.range(-9, 9));
}

HesseFiber random_fiber(Rng& rng) {
    for (;;) {
        const Eisenstein lam = random_eis(rng), mu = random_eis(rng);
        if (lam.is_zero() && mu.is_zero()) continue;
        return fiber_at(lam, mu);
    }
}

BigRational expected_j(const BigRational& t) {
    const BigRational t3 = BigRational(t * t * t);
    const BigRational num =
        BigRational(BigRational(27) * (1 + 8 * t3) * (1 + 8 * t3) * (1 + 8 * t3));
    const BigRational den =
        BigRational(t3 * (1 - t3) * (1 - t3) * (1 - t3));
    return BigRational(num / den);
}

}  // namespace

TEST_CASE("pencil members and their defining cubics") {
    MultiPoly<Eisenstein> fermat(3);
    fermat.add_term({3, 0, 0}, Eisenstein(1));
    fermat.add_term({0, 3, 0}, Eisenstein(1));
    fermat.add_term({0, 0, 3}, Eisenstein(1));
    CHECK(fiber_at(eis(1, 0), eis(0, 0)).cubic == fermat);

    MultiPoly<Eisenstein> triangle(3);
    triangle.add_term({1, 1, 1}, Eisenstein(-3));
    CHECK(fiber_at(eis(0, 0), eis(1, 0)).cubic == triangle);

    CHECK(fiber_at(eis(1, 0), eis(1, 0)).cubic == fermat + triangle);

    CHECK_THROWS_AS(fiber_at(eis(0, 0), eis(0, 0)), std::domain_error);

    // The flex representative lies on every member.
    const std::vector<Eisenstein> theta = {eis(1, 0), eis(-1, 0), eis(0, 0)};
    Rng rng(7);
    for (int i = 0; i < 20; ++i) {
        const HesseFiber f = random_fiber(rng);
        CHECK(f.cubic.evaluate(theta).is_zero());
    }
}

TEST_CASE("scaling the parameter pair keeps the projective member") {
    const Eisenstein scales[] = {eis(2, 0), eis(0, 1), eis(1, 2)};
    const HesseFiber base = fiber_at(eis(3, 0), eis(5, 0));
    for (const Eisenstein& c : scales) {
        const HesseFiber scaled = fiber_at(c * base.lambda, c * base.mu);
        CHECK(same_fiber(scaled, base));
        CHECK(scaled.cubic == base.cubic.scaled(c));
    }
    CHECK_FALSE(same_fiber(fiber_at(eis(1, 0), eis(1, 0)),
                           fiber_at(eis(1, 0), eis(2, 0))));
}

TEST_CASE("exactly four singular members") {
    const auto singular = find_singular_fibers();
    REQUIRE(singular.size() == 4);
    CHECK(contains_param(singular, eis(0, 0), eis(1, 0)));
    CHECK(contains_param(singular, eis(1, 0), eis(1, 0)));
    CHECK(contains_param(singular, eis(0, 1), eis(1, 0)));
    CHECK(contains_param(singular, eis(-1, -1), eis(1, 0)));  // w^2
    CHECK_FALSE(contains_param(singular, eis(1, 0), eis(0, 0)));

    for (const auto& pr : singular) {
        const HesseFiber f = fiber_at(pr.first, pr.second);
        CHECK(is_singular_fiber(f));
        CHECK(fiber_nodes(f).size() == 3);
    }
    CHECK_FALSE(is_singular_fiber(fiber_at(eis(1, 0), eis(0, 0))));
    CHECK_FALSE(is_singular_fiber(fiber_at(eis(2, 0), eis(1, 0))));
    CHECK(is_singular_fiber(fiber_at(eis(5, 0), eis(5, 0))));
}

TEST_CASE("nodes of the singular members are certified") {
    const HesseFiber triangle = fiber_at(eis(0, 0), eis(1, 0));
    const auto tri_nodes = fiber_nodes(triangle);
    REQUIRE(tri_nodes.size() == 3);
    std::vector<PlanePoint> tri_points;
    for (const FiberNode& n : tri_nodes) {
        CHECK(n.local_type == "node");
        tri_points.push_back(n.point);
    }
    CHECK(contains_point(tri_points, plane(1, 0, 0)));
    CHECK(contains_point(tri_points, plane(0, 1, 0)));
    CHECK(contains_point(tri_points, plane(0, 0, 1)));

    const HesseFiber diag = fiber_at(eis(1, 0), eis(1, 0));
    const auto diag_nodes = fiber_nodes(diag);
    REQUIRE(diag_nodes.size() == 3);
    std::vector<PlanePoint> diag_points;
    for (const FiberNode& n : diag_nodes) diag_points.push_back(n.point);
    CHECK(contains_point(diag_points, plane(1, 1, 1)));

    for (const auto& pr : find_singular_fibers()) {
        const HesseFiber f = fiber_at(pr.first, pr.second);
        const auto nodes = fiber_nodes(f);
        REQUIRE(nodes.size() == 3);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const auto grad = fiber_gradient(f, nodes[i].point);
            CHECK(grad[0].is_zero());
            CHECK(grad[1].is_zero());
            CHECK(grad[2].is_zero());
            CHECK(hessian_determinant(f, nodes[i].point).is_zero());
            const std::vector<Eisenstein> at = {
                nodes[i].point.X, nodes[i].point.Y, nodes[i].point.Z};
            CHECK(f.cubic.evaluate(at).is_zero());
            for (std::size_t j = i + 1; j < nodes.size(); ++j)
                CHECK_FALSE(plane_point_equal(nodes[i].point, nodes[j].point));
        }
    }

    CHECK_THROWS_AS(fiber_nodes(fiber_at(eis(1, 0), eis(0, 0))),
                    std::domain_error);
    CHECK_THROWS_AS(fiber_nodes(fiber_at(eis(2, 0), eis(1, 0))),
                    std::domain_error);
}

TEST_CASE("nine base points, three of them rational") {
    const std::vector<PlanePoint> bp = base_points();
    REQUIRE(bp.size() == 9);
    for (std::size_t i = 0; i < bp.size(); ++i)
        for (std::size_t j = i + 1; j < bp.size(); ++j)
            CHECK_FALSE(plane_point_equal(bp[i], bp[j]));

    CHECK(plane_point_equal(bp[0], plane(1, -1, 0)));
    const PlanePoint spec_pt{eis(0, 0), eis(1, 0), -Eisenstein::omega()};
    CHECK(contains_point(bp, spec_pt));

    int rational = 0;
    for (const PlanePoint& p : bp) {
        if (p.X.is_rational() && p.Y.is_rational() && p.Z.is_rational())
            ++rational;
    }
    CHECK(rational == 3);

    Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        const HesseFiber f = random_fiber(rng);
        for (const PlanePoint& p : bp) {
            const std::vector<Eisenstein> at = {p.X, p.Y, p.Z};
            CHECK(f.cubic.evaluate(at).is_zero());
        }
    }
}

TEST_CASE("the origin section is a flex of every smooth member") {
    const PlanePoint theta = plane(1, -1, 0);
    Rng rng(23);
    int smooth_seen = 0;
    while (smooth_seen < 10) {
        const HesseFiber f = random_fiber(rng);
        if (is_singular_fiber(f)) continue;
        ++smooth_seen;
        CHECK(hessian_determinant(f, theta).is_zero());
        const auto grad = fiber_gradient(f, theta);
        const bool smooth_at_theta =
            !grad[0].is_zero() || !grad[1].is_zero() || !grad[2].is_zero();
        CHECK(smooth_at_theta);
    }
}

TEST_CASE("Fermat member converts to a model with j = 0") {
    const HesseWeierstrass hw = fiber_to_weierstrass(fiber_at(eis(1, 0), eis(0, 0)));
    CHECK(hw.t_infinite);
    CHECK(hw.model == mk(0, 0, 9, 0, -27));
    CHECK(hw.model.c4() == 0);
    CHECK(hw.model.j_invariant() == BigRational(0));

    CHECK(hesse_point_to_curve(hw, BigRational(1), BigRational(-1),
                               BigRational(0)).is_infinity());
    const CurvePoint p1 = hesse_point_to_curve(hw, BigRational(-1),
                                               BigRational(0), BigRational(1));
    const CurvePoint expect1 = CurvePoint(BigRational(3), BigRational(-9));
    CHECK(p1 == expect1);
    CHECK(on_curve(hw.model, p1));
    const CurvePoint p2 = hesse_point_to_curve(hw, BigRational(0),
                                               BigRational(-1), BigRational(1));
    const CurvePoint expect2 = CurvePoint(BigRational(3), BigRational(0));
    CHECK(p2 == expect2);
    CHECK(on_curve(hw.model, p2));
}

TEST_CASE("conversion at parameter two, frozen") {
    const HesseWeierstrass hw = fiber_to_weierstrass(fiber_at(eis(2, 0), eis(1, 0)));
    CHECK_FALSE(hw.t_infinite);
    CHECK(hw.t == BigRational(2));
    CHECK(hw.model == mk(-3, -72, 0, 1512, -10584));
    const BigRational j2 = make_rational(BigInt(-7414875), BigInt(2744));
    CHECK(hw.model.j_invariant() == j2);

    CHECK(hesse_point_to_curve(hw, BigRational(1), BigRational(-1),
                               BigRational(0)).is_infinity());
    const CurvePoint p1 = hesse_point_to_curve(hw, BigRational(-1),
                                               BigRational(0), BigRational(1));
    const CurvePoint expect1 = CurvePoint(BigRational(42), BigRational(126));
    CHECK(p1 == expect1);
    CHECK(on_curve(hw.model, p1));
    const CurvePoint p2 = hesse_point_to_curve(hw, BigRational(0),
                                               BigRational(-1), BigRational(1));
    const CurvePoint expect2 = CurvePoint(BigRational(42), BigRational(0));
    CHECK(p2 == expect2);
    CHECK(on_curve(hw.model, p2));

    // The j-invariant only depends on the projective parameter.
    const HesseWeierstrass doubled =
        fiber_to_weierstrass(fiber_at(eis(4, 0), eis(2, 0)));
    CHECK(doubled.model.j_invariant() == j2);
    const HesseWeierstrass twisted =
        fiber_to_weierstrass(fiber_at(eis(0, 2), eis(0, 1)));
    CHECK_FALSE(twisted.t_infinite);
    CHECK(twisted.t == BigRational(2));
    CHECK(twisted.model.j_invariant() == j2);
}

TEST_CASE("j-invariant matches the closed form in the moduli coordinate") {
    const std::pair<long, long> params[] = {
        {2, 1}, {3, 1}, {-1, 1}, {1, 2}, {-2, 1}, {5, 1}, {7, 3}, {-1, 3},
        {4, 1}, {-5, 2}, {10, 1}, {1, 5}, {-7, 1}, {8, 5}, {6, 1}};
    for (const auto& [num, den] : params) {
        const HesseWeierstrass hw =
            fiber_to_weierstrass(fiber_at(eis(num, 0), eis(den, 0)));
        const BigRational t = make_rational(BigInt(num), BigInt(den));
        CHECK(hw.t == t);
        CHECK(hw.model.j_invariant() == expected_j(t));
    }
    // Non-isotriviality witness.
    const HesseWeierstrass a = fiber_to_weierstrass(fiber_at(eis(2, 0), eis(1, 0)));
    const HesseWeierstrass b = fiber_to_weierstrass(fiber_at(eis(3, 0), eis(1, 0)));
    CHECK(a.model.j_invariant() != b.model.j_invariant());

    // Mapped rational base points satisfy the output equation.
    const long ts[] = {3, 5, -1, -4};
    for (long tv : ts) {
        const HesseWeierstrass hw =
            fiber_to_weierstrass(fiber_at(eis(tv, 0), eis(1, 0)));
        CHECK(hesse_point_to_curve(hw, BigRational(1), BigRational(-1),
                                   BigRational(0)).is_infinity());
        const CurvePoint q1 = hesse_point_to_curve(hw, BigRational(-1),
                                                   BigRational(0), BigRational(1));
        CHECK(on_curve(hw.model, q1));
        const CurvePoint q2 = hesse_point_to_curve(hw, BigRational(0),
                                                   BigRational(-1), BigRational(1));
        CHECK(on_curve(hw.model, q2));
    }
}

TEST_CASE("conversion rejects singular and irrational parameters") {
    CHECK_THROWS_AS(fiber_to_weierstrass(fiber_at(eis(0, 0), eis(1, 0))),
                    std::domain_error);
    CHECK_THROWS_AS(fiber_to_weierstrass(fiber_at(eis(1, 0), eis(1, 0))),
                    std::domain_error);
    CHECK_THROWS_AS(fiber_to_weierstrass(fiber_at(eis(0, 1), eis(1, 0))),
                    std::domain_error);
    // Smooth, but lambda/mu is not in Q.
    CHECK_THROWS_AS(fiber_to_weierstrass(fiber_at(eis(1, 0), eis(0, 2))),
                    std::domain_error);
}

TEST_CASE("denominator of j grows toward the rational singular parameters") {
    for (long k = 1; k <= 3; ++k) {
        const BigInt pk = pow_int(BigInt(5), static_cast<unsigned long>(k));
        const HesseWeierstrass near0 = fiber_to_weierstrass(
            fiber_at(Eisenstein::from_rational(BigRational(pk)), eis(1, 0)));
        CHECK(p_valuation(denominator(near0.model.j_invariant()), BigInt(5)) ==
              3 * k);
        const BigInt pk1 = BigInt(pk + 1);
        const HesseWeierstrass near1 = fiber_to_weierstrass(
            fiber_at(Eisenstein::from_rational(BigRational(pk1)), eis(1, 0)));
        CHECK(p_valuation(denominator(near1.model.j_invariant()), BigInt(5)) ==
              3 * k);
    }
}

TEST_CASE("plane points outside the affine chart are rejected") {
    const HesseWeierstrass hw = fiber_to_weierstrass(fiber_at(eis(2, 0), eis(1, 0)));
    // Z' = 2(X + Y) + Z vanishes but X' = X + Y does not.
    CHECK_THROWS_AS(hesse_point_to_curve(hw, BigRational(1), BigRational(0),
                                         BigRational(-2)),
                    std::domain_error);
    CHECK_THROWS_AS(hesse_point_to_curve(hw, BigRational(0), BigRational(0),
                                         BigRational(0)),
                    std::domain_error);
}
