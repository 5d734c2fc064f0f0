#pragma once
/**
 * @file twist.hpp
 * @brief Quadratic twists E_t: t y^2 = f(x) of a fixed cubic f = x^3 + ax + b
 *        and their common landing surface z^2 = f(x1) f(x2), which receives
 *        the point pairs of every twist at once.
 */
#include <vector>

#include "ecs/arith.hpp"
#include "ecs/weierstrass.hpp"

namespace ecs {

// f(x) = x^3 + a x + b with gcd(a, b) = 1 and nonzero discriminant.
struct TwistCubic {
    BigInt a, b;

    BigRational evaluate(const BigRational& x) const;
    BigInt discriminant() const;  // -4a^3 - 27b^2
};

struct TwistFamily {
    TwistCubic f;
    std::vector<BigInt> t_range;  // squarefree nonzero twist parameters
};

/**
 * One twist written as an integral Weierstrass model
 * y^2 = x^3 + a t^2 x + b t^3. A point (x, y) with t y^2 = f(x) corresponds
 * to (t x, t^2 y) on the model; the dictionary is kept so scan output can be
 * reported in the t y^2 = f(x) coordinates the surface map expects.
 */
struct TwistedCurve {
    WeierstrassModel model;
    BigInt t;

    CurvePoint to_model(const CurvePoint& p) const;
    CurvePoint from_model(const CurvePoint& p) const;
};

// A point of the surface z^2 = f(x1) f(x2).
struct KummerPoint {
    BigRational x1, x2, z;

    bool operator==(const KummerPoint& o) const {
        return x1 == o.x1 && x2 == o.x2 && z == o.z;
    }
    bool operator!=(const KummerPoint& o) const { return !(*this == o); }
};

/**
 * Builds the integral model of t y^2 = f(x). Throws std::domain_error when
 * t is zero or not squarefree, when gcd(a, b) != 1, or when f is singular.
 */
TwistedCurve twist_curve(const TwistCubic& f, const BigInt& t);

/**
 * Sends a pair of affine points of t y^2 = f(x) to (x1, x2, t y1 y2), which
 * satisfies z^2 = f(x1) f(x2) whatever t was; points of every twist land on
 * the one surface. S-integral inputs with S-integral t give an S-integral
 * image. Throws std::domain_error for infinity or for points not on the
 * twisted curve.
 */
KummerPoint kummer_map(const TwistCubic& f, const BigInt& t,
                       const CurvePoint& p1, const CurvePoint& p2);

// Exact membership test for the landing surface.
bool on_kummer_surface(const TwistCubic& f, const KummerPoint& k);

struct TwistScanEntry {
    BigInt t;
    std::vector<CurvePoint> points;   // on t y^2 = f(x), deterministic order
    std::vector<KummerPoint> kummer;  // all ordered pairs, row-major
};

/**
 * For each t in the family: searches the S-integral points of the integral
 * model up to `height`, pulls them back to t y^2 = f(x) coordinates, and
 * emits every ordered Kummer pair. Entries keep the family's t order and the
 * output is independent of the worker count.
 */
std::vector<TwistScanEntry> twist_scan(const TwistFamily& family,
                                       const std::vector<BigInt>& s_primes,
                                       const BigInt& height,
                                       unsigned jobs = 1);

}  // namespace ecs
