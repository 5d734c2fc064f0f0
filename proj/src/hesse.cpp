#include "ecs/hesse.hpp"

#include <algorithm>
#include <stdexcept>

#include "ecs/factor.hpp"

namespace ecs {
namespace {

using Poly = MultiPoly<Eisenstein>;

std::vector<Eisenstein> coords(const PlanePoint& p) { return {p.X, p.Y, p.Z}; }

bool is_zero_point(const PlanePoint& p) {
    return p.X.is_zero() && p.Y.is_zero() && p.Z.is_zero();
}

Eisenstein cube(const Eisenstein& z) { return z * z * z; }

// 3x3 matrix of second partials evaluated at a point.
std::array<std::array<Eisenstein, 3>, 3> hessian_at(const HesseFiber& f,
                                                    const PlanePoint& p) {
    const std::vector<Eisenstein> at = coords(p);
    std::array<std::array<Eisenstein, 3>, 3> h;
    for (std::size_t i = 0; i < 3; ++i) {
        const Poly di = f.cubic.derivative(i);
        for (std::size_t j = 0; j < 3; ++j) {
            h[i][j] = di.derivative(j).evaluate(at);
        }
    }
    return h;
}

Eisenstein det3(const std::array<std::array<Eisenstein, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

PlanePoint cross(const std::array<Eisenstein, 3>& a,
                 const std::array<Eisenstein, 3>& b) {
    return PlanePoint{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                      a[0] * b[1] - a[1] * b[0]};
}

// A singular point is a node when the Hessian there has rank exactly two:
// the point itself spans the kernel and some 2x2 minor survives.
FiberNode certified_node(const HesseFiber& f, const PlanePoint& p) {
    if (is_zero_point(p)) throw std::logic_error("degenerate node candidate");
    const std::vector<Eisenstein> at = coords(p);
    if (!f.cubic.evaluate(at).is_zero())
        throw std::logic_error("node candidate off the fiber");
    const std::array<Eisenstein, 3> grad = fiber_gradient(f, p);
    if (!grad[0].is_zero() || !grad[1].is_zero() || !grad[2].is_zero())
        throw std::logic_error("node candidate is a smooth point");
    const auto h = hessian_at(f, p);
    for (std::size_t i = 0; i < 3; ++i) {
        const Eisenstein row =
            h[i][0] * p.X + h[i][1] * p.Y + h[i][2] * p.Z;
        if (!row.is_zero())
            throw std::logic_error("Hessian kernel certificate failed");
    }
    bool has_minor = false;
    for (std::size_t i1 = 0; i1 < 3 && !has_minor; ++i1) {
        for (std::size_t i2 = i1 + 1; i2 < 3 && !has_minor; ++i2) {
            for (std::size_t j1 = 0; j1 < 3 && !has_minor; ++j1) {
                for (std::size_t j2 = j1 + 1; j2 < 3; ++j2) {
                    const Eisenstein minor =
                        h[i1][j1] * h[i2][j2] - h[i1][j2] * h[i2][j1];
                    if (!minor.is_zero()) {
                        has_minor = true;
                        break;
                    }
                }
            }
        }
    }
    if (!has_minor) throw std::logic_error("degenerate quadratic part");
    return FiberNode{p, "node"};
}

BigInt as_int(const BigRational& q, const char* what) {
    if (!is_integer(q)) throw std::logic_error(what);
    return numerator(q);
}

// Smallest positive u with u^w clearing each denominator at its weight.
BigInt clearing_scale(const std::vector<std::pair<BigRational, unsigned>>& cs) {
    BigInt carrier(1);
    for (const auto& [q, w] : cs) carrier *= denominator(q);
    BigInt u(1);
    for (const BigInt& p : prime_divisors(carrier)) {
        long e = 0;
        for (const auto& [q, w] : cs) {
            const long v = p_valuation(denominator(q), p);
            e = std::max(e, (v + static_cast<long>(w) - 1) / static_cast<long>(w));
        }
        u *= pow_int(p, static_cast<unsigned long>(e));
    }
    return u;
}

BigRational rational_coeff(const Poly& g, unsigned i, unsigned j, unsigned k,
                           const char* what) {
    const Exponents e = {i, j, k};
    const auto it = g.terms().find(e);
    if (it == g.terms().end()) return BigRational(0);
    if (!it->second.is_rational()) throw std::logic_error(what);
    return it->second.a;
}

}  // namespace

bool plane_point_equal(const PlanePoint& p, const PlanePoint& q) {
    return (p.X * q.Y - p.Y * q.X).is_zero() &&
           (p.X * q.Z - p.Z * q.X).is_zero() &&
           (p.Y * q.Z - p.Z * q.Y).is_zero();
}

bool same_fiber(const HesseFiber& f, const HesseFiber& g) {
    return (f.lambda * g.mu - g.lambda * f.mu).is_zero();
}

HesseFiber fiber_at(const Eisenstein& lambda, const Eisenstein& mu) {
    if (lambda.is_zero() && mu.is_zero())
        throw std::domain_error("pencil parameter must be nonzero");
    Poly cubic(3);
    cubic.add_term({3, 0, 0}, lambda);
    cubic.add_term({0, 3, 0}, lambda);
    cubic.add_term({0, 0, 3}, lambda);
    cubic.add_term({1, 1, 1}, Eisenstein(-3) * mu);
    return HesseFiber{lambda, mu, cubic};
}

std::array<Eisenstein, 3> fiber_gradient(const HesseFiber& f,
                                         const PlanePoint& p) {
    const std::vector<Eisenstein> at = coords(p);
    std::array<Eisenstein, 3> g;
    for (std::size_t i = 0; i < 3; ++i) g[i] = f.cubic.derivative(i).evaluate(at);
    return g;
}

Eisenstein hessian_determinant(const HesseFiber& f, const PlanePoint& p) {
    return det3(hessian_at(f, p));
}

bool is_singular_fiber(const HesseFiber& f) {
    if (f.lambda.is_zero()) return true;
    return cube(f.lambda) == cube(f.mu);
}

std::vector<FiberNode> fiber_nodes(const HesseFiber& fiber) {
    if (!is_singular_fiber(fiber))
        throw std::domain_error("smooth member has no nodes");
    std::vector<FiberNode> out;
    if (fiber.lambda.is_zero()) {
        // XYZ = 0: the coordinate triangle, singular at its vertices.
        const Eisenstein one(1), zero(0);
        out.push_back(certified_node(fiber, PlanePoint{one, zero, zero}));
        out.push_back(certified_node(fiber, PlanePoint{zero, one, zero}));
        out.push_back(certified_node(fiber, PlanePoint{zero, zero, one}));
        return out;
    }
    // lambda^3 = mu^3, so m = mu/lambda is a cube root of unity and the
    // member splits into the lines X + w^k Y + w^{2k} m Z, k = 0, 1, 2.
    // Its singular points are the pairwise line intersections.
    const Eisenstein m = fiber.mu / fiber.lambda;
    const Eisenstein w = Eisenstein::omega();
    std::array<std::array<Eisenstein, 3>, 3> lines;
    Eisenstein wk(1);
    for (std::size_t k = 0; k < 3; ++k) {
        lines[k] = {Eisenstein(1), wk, wk * wk * m};
        wk = wk * w;
    }
    out.push_back(certified_node(fiber, cross(lines[0], lines[1])));
    out.push_back(certified_node(fiber, cross(lines[0], lines[2])));
    out.push_back(certified_node(fiber, cross(lines[1], lines[2])));
    return out;
}

std::vector<std::pair<Eisenstein, Eisenstein>> find_singular_fibers() {
    // The gradient system lambda X^2 = mu YZ (and cyclic) forces either
    // lambda = 0 (triangle) or, multiplying the three equations on the
    // complement of the triangle, lambda^3 = mu^3.
    const Eisenstein w = Eisenstein::omega();
    std::vector<std::pair<Eisenstein, Eisenstein>> out = {
        {Eisenstein(0), Eisenstein(1)},
        {Eisenstein(1), Eisenstein(1)},
        {w, Eisenstein(1)},
        {w * w, Eisenstein(1)},
    };
    for (const auto& [lam, mu] : out) {
        if (fiber_nodes(fiber_at(lam, mu)).size() != 3)
            throw std::logic_error("singular member certification failed");
    }
    return out;
}

std::vector<PlanePoint> base_points() {
    // Common zeros of X^3 + Y^3 + Z^3 and XYZ: on each coordinate line the
    // remaining two coordinates have ratio a cube root of -1.
    const Eisenstein w = Eisenstein::omega();
    const Eisenstein one(1), zero(0);
    std::vector<PlanePoint> out;
    Eisenstein wk(1);
    for (std::size_t k = 0; k < 3; ++k) {
        out.push_back(PlanePoint{-wk, one, zero});
        wk = wk * w;
    }
    wk = Eisenstein(1);
    for (std::size_t k = 0; k < 3; ++k) {
        out.push_back(PlanePoint{-wk, zero, one});
        wk = wk * w;
    }
    wk = Eisenstein(1);
    for (std::size_t k = 0; k < 3; ++k) {
        out.push_back(PlanePoint{zero, -wk, one});
        wk = wk * w;
    }
    // Flex representative first, as [1:-1:0].
    out[0] = PlanePoint{one, -one, zero};
    return out;
}

HesseWeierstrass fiber_to_weierstrass(const HesseFiber& fiber) {
    if (is_singular_fiber(fiber))
        throw std::domain_error("singular member has no Weierstrass model");

    bool infinite = false;
    BigRational t(0);
    if (fiber.mu.is_zero()) {
        infinite = true;
    } else {
        const Eisenstein ratio = fiber.lambda / fiber.mu;
        if (!ratio.is_rational())
            throw std::domain_error("parameter is not rational");
        t = ratio.a;
    }

    // New coordinates: Z' cuts the tangent at the flex [1:-1:0], X' is a
    // second form vanishing there, Y' completes the frame. Expressed the
    // other way around for substitution into the cubic.
    const Poly vx = Poly::variable(3, 0), vy = Poly::variable(3, 1),
               vz = Poly::variable(3, 2);
    Poly px(3), py(3), pz(3);
    std::array<std::array<BigRational, 3>, 3> rows;
    Eisenstein lam_n, mu_n;
    if (infinite) {
        // Tangent X + Y: Z' = X + Y, X' = Z, Y' = X.
        rows = {{{BigRational(0), BigRational(0), BigRational(1)},
                 {BigRational(1), BigRational(0), BigRational(0)},
                 {BigRational(1), BigRational(1), BigRational(0)}}};
        px = vy;
        py = vz - vy;
        pz = vx;
        lam_n = Eisenstein(1);
        mu_n = Eisenstein(0);
    } else {
        // Tangent t(X + Y) + Z: Z' = t(X + Y) + Z, X' = X + Y, Y' = X.
        rows = {{{BigRational(1), BigRational(1), BigRational(0)},
                 {BigRational(1), BigRational(0), BigRational(0)},
                 {t, t, BigRational(1)}}};
        const Eisenstein te = Eisenstein::from_rational(t);
        px = vy;
        py = vx - vy;
        pz = vz - vx.scaled(te);
        lam_n = te;
        mu_n = Eisenstein(1);
    }

    const Poly sum_cubes = px * px * px + py * py * py + pz * pz * pz;
    const Poly g =
        sum_cubes.scaled(lam_n) - (px * py * pz).scaled(Eisenstein(3) * mu_n);

    // Flex form: no Y'^3, X'^2 Y', or X' Y'^2 terms survive.
    const char* bad = "flex normalization produced a stray term";
    if (rational_coeff(g, 0, 3, 0, bad) != 0 ||
        rational_coeff(g, 2, 1, 0, bad) != 0 ||
        rational_coeff(g, 1, 2, 0, bad) != 0)
        throw std::logic_error(bad);

    const char* irr = "irrational coefficient after normalization";
    const BigRational a = rational_coeff(g, 3, 0, 0, irr);
    const BigRational b1 = rational_coeff(g, 2, 0, 1, irr);
    const BigRational b2 = rational_coeff(g, 1, 1, 1, irr);
    const BigRational b3 = rational_coeff(g, 0, 2, 1, irr);
    const BigRational c1 = rational_coeff(g, 1, 0, 2, irr);
    const BigRational c2 = rational_coeff(g, 0, 1, 2, irr);
    const BigRational c3 = rational_coeff(g, 0, 0, 3, irr);
    if (b3 == 0) throw std::logic_error("flex tangent is not transverse");
    if (a == 0) throw std::logic_error("cubic term vanished on a smooth member");

    // Divide by b3, absorb the leading coefficient with x = alpha X, y =
    // alpha Y for alpha = -a/b3, and read off the long Weierstrass form.
    const BigRational alpha = BigRational(-a / b3);
    const BigRational ra1 = BigRational(b2 / b3);
    const BigRational ra2 = BigRational(-b1 / b3);
    const BigRational ra3 = BigRational(alpha * (c2 / b3));
    const BigRational ra4 = BigRational(alpha * (-c1 / b3));
    const BigRational ra6 = BigRational(alpha * alpha * (-c3 / b3));

    const BigInt u = clearing_scale(
        {{ra1, 1}, {ra2, 2}, {ra3, 3}, {ra4, 4}, {ra6, 6}});
    const BigRational uq(u);
    const char* frac = "denominator clearing failed";
    const WeierstrassModel model(
        as_int(BigRational(uq * ra1), frac),
        as_int(BigRational(uq * uq * ra2), frac),
        as_int(BigRational(uq * uq * uq * ra3), frac),
        as_int(BigRational(uq * uq * uq * uq * ra4), frac),
        as_int(BigRational(uq * uq * uq * uq * uq * uq * ra6), frac));

    HesseWeierstrass out{model, infinite, t, rows, alpha, u};
    return out;
}

CurvePoint hesse_point_to_curve(const HesseWeierstrass& w, const BigRational& X,
                                const BigRational& Y, const BigRational& Z) {
    if (X == 0 && Y == 0 && Z == 0)
        throw std::domain_error("projective point needs a nonzero coordinate");
    std::array<BigRational, 3> primed;
    const std::array<BigRational, 3> in = {X, Y, Z};
    for (std::size_t i = 0; i < 3; ++i) {
        BigRational acc(0);
        for (std::size_t j = 0; j < 3; ++j)
            acc = BigRational(acc + w.rows[i][j] * in[j]);
        primed[i] = acc;
    }
    if (primed[2] == 0) {
        if (primed[0] == 0) return CurvePoint::infinity();
        throw std::domain_error("point maps to the line at infinity");
    }
    const BigRational uq(w.u);
    const BigRational xa = BigRational(primed[0] / primed[2]);
    const BigRational ya = BigRational(primed[1] / primed[2]);
    const BigRational x = BigRational(uq * uq * w.alpha * xa);
    const BigRational y = BigRational(uq * uq * uq * w.alpha * ya);
    return CurvePoint(x, y);
}

}  // namespace ecs
