#pragma once
/**
 * @file weierstrass.hpp
 * @brief Long Weierstrass models over Z, their invariants, coordinate changes,
 *        the group law with exact rational arithmetic, and division
 *        polynomials.
 *
 * A model is y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6 with ai in Z and
 * nonzero discriminant. All derived quantities (b2, b4, b6, b8, c4, c6, delta)
 * are cached at construction.
 */
#include <optional>
#include <string>
#include <vector>

#include "ecs/arith.hpp"
#include "ecs/multipoly.hpp"

namespace ecs {

class WeierstrassModel {
  public:
    WeierstrassModel(BigInt a1, BigInt a2, BigInt a3, BigInt a4, BigInt a6);

    // Short form y^2 = x^3 + A x + B.
    static WeierstrassModel short_form(const BigInt& a, const BigInt& b);

    const BigInt& a1() const { return a1_; }
    const BigInt& a2() const { return a2_; }
    const BigInt& a3() const { return a3_; }
    const BigInt& a4() const { return a4_; }
    const BigInt& a6() const { return a6_; }

    const BigInt& b2() const { return b2_; }
    const BigInt& b4() const { return b4_; }
    const BigInt& b6() const { return b6_; }
    const BigInt& b8() const { return b8_; }
    const BigInt& c4() const { return c4_; }
    const BigInt& c6() const { return c6_; }
    const BigInt& discriminant() const { return delta_; }

    BigRational j_invariant() const;  // c4^3 / delta

    bool operator==(const WeierstrassModel& o) const;
    bool operator!=(const WeierstrassModel& o) const { return !(*this == o); }

    std::string to_string() const;  // "[a1,a2,a3,a4,a6]"

  private:
    BigInt a1_, a2_, a3_, a4_, a6_;
    BigInt b2_, b4_, b6_, b8_, c4_, c6_, delta_;
};

// Affine rational point or the point at infinity.
class CurvePoint {
  public:
    static CurvePoint infinity() { return CurvePoint(); }
    CurvePoint(BigRational x, BigRational y);

    bool is_infinity() const { return infinite_; }
    const BigRational& x() const;  // throws std::domain_error at infinity
    const BigRational& y() const;

    bool operator==(const CurvePoint& o) const;
    bool operator!=(const CurvePoint& o) const { return !(*this == o); }

    std::string to_string() const;  // "O" or "(x, y)"

  private:
    CurvePoint() : infinite_(true) {}
    bool infinite_;
    BigRational x_, y_;
};

// Deterministic total order: infinity first, then by (x, y).
bool point_less(const CurvePoint& a, const CurvePoint& b);

bool on_curve(const WeierstrassModel& e, const CurvePoint& p);

/**
 * Coordinate change x = u^2 x' + r, y = u^3 y' + s u^2 x' + t from a source
 * model to an image model. Covariance: c4 = u^4 c4', c6 = u^6 c6',
 * delta = u^12 delta'. u may be any nonzero rational; integral models on both
 * sides are the caller's concern (apply_model_map enforces it).
 */
struct ModelMap {
    BigRational u, r, s, t;

    static ModelMap identity();
    // (x, y) -> (c^2 x, c^3 y), i.e. (u, r, s, t) = (1/c, 0, 0, 0).
    static ModelMap rescale(const BigInt& c);

    ModelMap then(const ModelMap& next) const;  // this first, then next
    ModelMap inverse() const;

    // Transports a point on the source model to the image model.
    CurvePoint apply(const CurvePoint& p) const;

    bool is_identity() const;
    std::string to_string() const;  // "[u,r,s,t]"
};

// Image of `e` under `map`; throws std::domain_error when the image
// coefficients are not integers.
WeierstrassModel apply_model_map(const WeierstrassModel& e, const ModelMap& map);

// Group law. All operands are validated against the curve equation.
CurvePoint negate(const WeierstrassModel& e, const CurvePoint& p);
CurvePoint add_points(const WeierstrassModel& e, const CurvePoint& p,
                      const CurvePoint& q);
CurvePoint scalar_multiply(const WeierstrassModel& e, const BigInt& n,
                           const CurvePoint& p);

/**
 * Division polynomial psi_n. With z := 2y + a1 x + a3 (so z^2 equals
 * 4x^3 + b2 x^2 + 2 b4 x + b6 on the curve), psi_n lies in Z[x] for odd n and
 * in z * Z[x] for even n. x_part holds the Z[x] factor in the single
 * variable x.
 */
struct DivisionPolynomial {
    unsigned n = 0;
    bool has_z_factor = false;            // true exactly when n is even
    MultiPoly<BigRational> x_part;        // one variable: x

    // As a polynomial in the two variables (x, z).
    MultiPoly<BigRational> full() const;
};

DivisionPolynomial division_polynomial(const WeierstrassModel& e, unsigned n);

// psi_n evaluated at a finite point (z picks up 2y + a1 x + a3).
BigRational evaluate_psi(const WeierstrassModel& e, unsigned n,
                         const CurvePoint& p);

// The right-hand side of z^2: 4x^3 + b2 x^2 + 2 b4 x + b6, one variable.
MultiPoly<BigRational> two_torsion_cubic(const WeierstrassModel& e);

}  // namespace ecs
