#pragma once
/**
 * @file hesse.hpp
 * @brief The pencil of plane cubics lambda(X^3+Y^3+Z^3) - 3 mu XYZ over Q(w):
 *        its members, the four singular members and their nodes, the nine
 *        base points, and a flex-based conversion of smooth members with
 *        rational parameter to long Weierstrass form over Q.
 *
 * The moduli coordinate is fixed as t = lambda/mu, so the singular locus is
 * t in {0, 1, w, w^2} together with nothing at t = infinity (the Fermat
 * member is smooth).
 */
#include <array>
#include <string>
#include <utility>
#include <vector>

#include "ecs/arith.hpp"
#include "ecs/eisenstein.hpp"
#include "ecs/multipoly.hpp"
#include "ecs/weierstrass.hpp"

namespace ecs {

// Projective plane point over Q(w); coordinates not all zero.
struct PlanePoint {
    Eisenstein X;
    Eisenstein Y;
    Eisenstein Z;
};

// Equality up to a nonzero scalar.
bool plane_point_equal(const PlanePoint& p, const PlanePoint& q);

// One member of the pencil. The cubic is stored in the variables (X, Y, Z),
// indices 0..2, and equals lambda (X^3 + Y^3 + Z^3) - 3 mu XYZ.
struct HesseFiber {
    Eisenstein lambda;
    Eisenstein mu;
    MultiPoly<Eisenstein> cubic;
};

// Same projective parameter [lambda : mu].
bool same_fiber(const HesseFiber& f, const HesseFiber& g);

// Throws std::domain_error when both parameters vanish.
HesseFiber fiber_at(const Eisenstein& lambda, const Eisenstein& mu);

// Gradient of the defining cubic at a point.
std::array<Eisenstein, 3> fiber_gradient(const HesseFiber& f,
                                         const PlanePoint& p);

// Determinant of the 3x3 matrix of second partials at a point; vanishes at
// flexes and singular points.
Eisenstein hessian_determinant(const HesseFiber& f, const PlanePoint& p);

// A member is singular exactly when lambda = 0 or lambda^3 = mu^3.
bool is_singular_fiber(const HesseFiber& f);

// The four singular parameters [lambda : mu], each certified by exhibiting
// its nodes: [0:1], [1:1], [w:1], [w^2:1].
std::vector<std::pair<Eisenstein, Eisenstein>> find_singular_fibers();

struct FiberNode {
    PlanePoint point;
    // Certified by a rank-2 Hessian at the point, never assumed.
    std::string local_type;
};

// All singular points of a singular member; always three nodes.
// Throws std::domain_error on a smooth member.
std::vector<FiberNode> fiber_nodes(const HesseFiber& fiber);

// The nine common zeros of X^3 + Y^3 + Z^3 and XYZ; they lie on every
// member. [1:-1:0] comes first; exactly three are rational.
std::vector<PlanePoint> base_points();

// Result of converting a smooth member with rational parameter to a long
// Weierstrass model over Q. The plane maps to the curve through
//   (X', Y', Z') = rows * (X, Y, Z),
//   (x, y) = (u^2 alpha X'/Z', u^3 alpha Y'/Z'),
// sending the flex [1:-1:0] to the point at infinity.
struct HesseWeierstrass {
    WeierstrassModel model;
    bool t_infinite = false;
    BigRational t;  // meaningful when !t_infinite
    std::array<std::array<BigRational, 3>, 3> rows;
    BigRational alpha;
    BigInt u = BigInt(1);
};

// Throws std::domain_error on a singular member or when lambda/mu is
// neither rational nor infinite.
HesseWeierstrass fiber_to_weierstrass(const HesseFiber& fiber);

// Image of a rational plane point under the recorded map. The flex goes to
// the point at infinity; any other point on the line Z' = 0 is outside the
// affine chart and raises std::domain_error.
CurvePoint hesse_point_to_curve(const HesseWeierstrass& w, const BigRational& X,
                                const BigRational& Y, const BigRational& Z);

}  // namespace ecs
