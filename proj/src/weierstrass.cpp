#include "ecs/weierstrass.hpp"

#include <cassert>
#include <stdexcept>
#include <utility>

namespace ecs {

WeierstrassModel::WeierstrassModel(BigInt a1, BigInt a2, BigInt a3, BigInt a4,
                                   BigInt a6)
    : a1_(std::move(a1)),
      a2_(std::move(a2)),
      a3_(std::move(a3)),
      a4_(std::move(a4)),
      a6_(std::move(a6)) {
    b2_ = a1_ * a1_ + 4 * a2_;
    b4_ = 2 * a4_ + a1_ * a3_;
    b6_ = a3_ * a3_ + 4 * a6_;
    b8_ = a1_ * a1_ * a6_ + 4 * a2_ * a6_ - a1_ * a3_ * a4_ + a2_ * a3_ * a3_ -
          a4_ * a4_;
    c4_ = b2_ * b2_ - 24 * b4_;
    c6_ = -b2_ * b2_ * b2_ + 36 * b2_ * b4_ - 216 * b6_;
    delta_ = -b2_ * b2_ * b8_ - 8 * b4_ * b4_ * b4_ - 27 * b6_ * b6_ +
             9 * b2_ * b4_ * b6_;
    // Internal consistency of the invariant formulas.
    assert(4 * b8_ == b2_ * b6_ - b4_ * b4_);
    assert(1728 * delta_ == c4_ * c4_ * c4_ - c6_ * c6_);
    if (delta_ == 0)
        throw std::domain_error("singular model: discriminant is zero");
}

WeierstrassModel WeierstrassModel::short_form(const BigInt& a, const BigInt& b) {
    return WeierstrassModel(0, 0, 0, a, b);
}

BigRational WeierstrassModel::j_invariant() const {
    return make_rational(c4_ * c4_ * c4_, delta_);
}

bool WeierstrassModel::operator==(const WeierstrassModel& o) const {
    return a1_ == o.a1_ && a2_ == o.a2_ && a3_ == o.a3_ && a4_ == o.a4_ &&
           a6_ == o.a6_;
}

std::string WeierstrassModel::to_string() const {
    return "[" + ecs::to_string(a1_) + "," + ecs::to_string(a2_) + "," +
           ecs::to_string(a3_) + "," + ecs::to_string(a4_) + "," +
           ecs::to_string(a6_) + "]";
}

CurvePoint::CurvePoint(BigRational x, BigRational y)
    : infinite_(false), x_(std::move(x)), y_(std::move(y)) {
    x_.canonicalize();
    y_.canonicalize();
}

const BigRational& CurvePoint::x() const {
    if (infinite_) throw std::domain_error("point at infinity has no x");
    return x_;
}

const BigRational& CurvePoint::y() const {
    if (infinite_) throw std::domain_error("point at infinity has no y");
    return y_;
}

bool CurvePoint::operator==(const CurvePoint& o) const {
    if (infinite_ || o.infinite_) return infinite_ == o.infinite_;
    return x_ == o.x_ && y_ == o.y_;
}

std::string CurvePoint::to_string() const {
    if (infinite_) return "O";
    return "(" + ecs::to_string(x_) + ", " + ecs::to_string(y_) + ")";
}

bool point_less(const CurvePoint& a, const CurvePoint& b) {
    if (a.is_infinity() || b.is_infinity()) return a.is_infinity() && !b.is_infinity();
    const int cx = cmp(a.x(), b.x());
    if (cx != 0) return cx < 0;
    return cmp(a.y(), b.y()) < 0;
}

bool on_curve(const WeierstrassModel& e, const CurvePoint& p) {
    if (p.is_infinity()) return true;
    const BigRational& x = p.x();
    const BigRational& y = p.y();
    const BigRational lhs = y * y + BigRational(e.a1()) * x * y + BigRational(e.a3()) * y;
    const BigRational rhs =
        x * x * x + BigRational(e.a2()) * x * x + BigRational(e.a4()) * x + BigRational(e.a6());
    return lhs == rhs;
}

ModelMap ModelMap::identity() {
    return ModelMap{BigRational(1), BigRational(0), BigRational(0), BigRational(0)};
}

ModelMap ModelMap::rescale(const BigInt& c) {
    if (c == 0) throw std::domain_error("rescale by zero");
    return ModelMap{make_rational(BigInt(1), c), BigRational(0), BigRational(0),
                    BigRational(0)};
}

ModelMap ModelMap::then(const ModelMap& next) const {
    ModelMap out;
    out.u = u * next.u;
    out.r = r + u * u * next.r;
    out.s = s + u * next.s;
    out.t = t + u * u * s * next.r + u * u * u * next.t;
    return out;
}

ModelMap ModelMap::inverse() const {
    if (u == 0) throw std::domain_error("model map with u = 0");
    ModelMap out;
    const BigRational iu = BigRational(1) / u;
    out.u = iu;
    out.r = -r * iu * iu;
    out.s = -s * iu;
    out.t = (s * r - t) * iu * iu * iu;
    return out;
}

CurvePoint ModelMap::apply(const CurvePoint& p) const {
    if (u == 0) throw std::domain_error("model map with u = 0");
    if (p.is_infinity()) return p;
    const BigRational u2 = u * u;
    const BigRational xp = (p.x() - r) / u2;
    const BigRational yp = (p.y() - s * (p.x() - r) - t) / (u2 * u);
    return CurvePoint(xp, yp);
}

bool ModelMap::is_identity() const {
    return u == 1 && r == 0 && s == 0 && t == 0;
}

std::string ModelMap::to_string() const {
    return "[" + ecs::to_string(u) + "," + ecs::to_string(r) + "," +
           ecs::to_string(s) + "," + ecs::to_string(t) + "]";
}

WeierstrassModel apply_model_map(const WeierstrassModel& e, const ModelMap& m) {
    if (m.u == 0) throw std::domain_error("model map with u = 0");
    const BigRational a1(e.a1()), a2(e.a2()), a3(e.a3()), a4(e.a4()), a6(e.a6());
    const BigRational &u = m.u, &r = m.r, &s = m.s, &t = m.t;

    const BigRational u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u4 * u2;
    const BigRational na1 = (a1 + 2 * s) / u;
    const BigRational na2 = (a2 - s * a1 + 3 * r - s * s) / u2;
    const BigRational na3 = (a3 + r * a1 + 2 * t) / u3;
    const BigRational na4 =
        (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u4;
    const BigRational na6 =
        (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) / u6;

    for (const BigRational* v : {&na1, &na2, &na3, &na4, &na6}) {
        if (!is_integer(*v))
            throw std::domain_error("model map image is not integral");
    }
    WeierstrassModel out(numerator(na1), numerator(na2), numerator(na3),
                         numerator(na4), numerator(na6));
    // Covariance check; guaranteed by the formulas.
    assert(BigRational(e.c4()) == u4 * BigRational(out.c4()));
    assert(BigRational(e.c6()) == u6 * BigRational(out.c6()));
    return out;
}

CurvePoint negate(const WeierstrassModel& e, const CurvePoint& p) {
    if (!on_curve(e, p)) throw std::domain_error("point not on curve");
    if (p.is_infinity()) return p;
    return CurvePoint(p.x(), -p.y() - BigRational(e.a1()) * p.x() - BigRational(e.a3()));
}

CurvePoint add_points(const WeierstrassModel& e, const CurvePoint& p,
                      const CurvePoint& q) {
    if (!on_curve(e, p) || !on_curve(e, q))
        throw std::domain_error("point not on curve");
    if (p.is_infinity()) return q;
    if (q.is_infinity()) return p;

    const BigRational a1(e.a1()), a2(e.a2()), a3(e.a3()), a4(e.a4()), a6(e.a6());
    const BigRational &x1 = p.x(), &y1 = p.y(), &x2 = q.x(), &y2 = q.y();

    BigRational lambda;
    if (x1 == x2) {
        // Same x: either inverses (sum O) or equal (tangent line).
        if (y2 == -y1 - a1 * x1 - a3) return CurvePoint::infinity();
        assert(y1 == y2);
        const BigRational den = 2 * y1 + a1 * x1 + a3;
        lambda = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / den;
    } else {
        lambda = (y2 - y1) / (x2 - x1);
    }
    const BigRational nu = y1 - lambda * x1;
    const BigRational x3 = lambda * lambda + a1 * lambda - a2 - x1 - x2;
    const BigRational y3 = -(lambda + a1) * x3 - nu - a3;
    return CurvePoint(x3, y3);
}

CurvePoint scalar_multiply(const WeierstrassModel& e, const BigInt& n,
                           const CurvePoint& p) {
    if (!on_curve(e, p)) throw std::domain_error("point not on curve");
    BigInt k = n;
    CurvePoint base = p;
    if (k < 0) {
        k = -k;
        base = negate(e, base);
    }
    CurvePoint acc = CurvePoint::infinity();
    // Double-and-add, most significant bit first.
    const std::size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
    if (k == 0) return acc;
    for (std::size_t i = bits; i-- > 0;) {
        acc = add_points(e, acc, acc);
        if (mpz_tstbit(k.get_mpz_t(), i)) acc = add_points(e, acc, base);
    }
    return acc;
}

namespace {

// One-variable polynomial from coefficients in descending degree order.
MultiPoly<BigRational> from_desc(const std::vector<BigInt>& coeffs) {
    MultiPoly<BigRational> p(1);
    const std::size_t top = coeffs.size() - 1;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] != 0)
            p.add_term({static_cast<unsigned>(top - i)}, BigRational(coeffs[i]));
    }
    return p;
}

}  // namespace

MultiPoly<BigRational> two_torsion_cubic(const WeierstrassModel& e) {
    return from_desc({BigInt(4), e.b2(), BigInt(2 * e.b4()), e.b6()});
}

MultiPoly<BigRational> DivisionPolynomial::full() const {
    // Two variables (x, z); lift x_part from one variable.
    MultiPoly<BigRational> out(2);
    for (const auto& [exps, coeff] : x_part.terms())
        out.add_term({exps[0], 0u}, coeff);
    if (has_z_factor) out = out * MultiPoly<BigRational>::variable(2, 1);
    return out;
}

namespace {

struct PsiTable {
    // psi_n = f[n] for odd n, z * f[n] for even n; products reduce z^2 -> B.
    std::vector<MultiPoly<BigRational>> f;
    MultiPoly<BigRational> b_cubic;  // B(x) = z^2 on the curve
};

PsiTable build_psi(const WeierstrassModel& e, unsigned upto) {
    using P = MultiPoly<BigRational>;
    const BigInt &b2 = e.b2(), &b4 = e.b4(), &b6 = e.b6(), &b8 = e.b8();

    PsiTable t;
    t.b_cubic = two_torsion_cubic(e);
    unsigned cap = upto < 4 ? 4 : upto;
    t.f.resize(cap + 1, P(1));  // zero polynomials in one variable
    t.f[1] = P::constant(1, BigRational(1));
    t.f[2] = P::constant(1, BigRational(1));  // psi_2 = z
    t.f[3] = from_desc({BigInt(3), b2, BigInt(3 * b4), BigInt(3 * b6), b8});
    t.f[4] = from_desc({BigInt(2), b2, BigInt(5 * b4), BigInt(10 * b6),
                        BigInt(10 * b8), BigInt(b2 * b8 - b4 * b6),
                        BigInt(b4 * b8 - b6 * b6)});

    const P bsq = t.b_cubic * t.b_cubic;
    for (unsigned n = 5; n <= cap; ++n) {
        if (n % 2 == 1) {
            const unsigned m = (n - 1) / 2;
            const P lead = t.f[m + 2] * t.f[m] * t.f[m] * t.f[m];
            const P tail = t.f[m - 1] * t.f[m + 1] * t.f[m + 1] * t.f[m + 1];
            // z-degrees: even indices carry one z each; z^4 reduces to B^2.
            t.f[n] = (m % 2 == 0) ? bsq * lead - tail : lead - bsq * tail;
        } else {
            const unsigned m = n / 2;
            t.f[n] = t.f[m] * (t.f[m + 2] * t.f[m - 1] * t.f[m - 1] -
                               t.f[m - 2] * t.f[m + 1] * t.f[m + 1]);
        }
    }
    return t;
}

}  // namespace

DivisionPolynomial division_polynomial(const WeierstrassModel& e, unsigned n) {
    if (n == 0) throw std::domain_error("division polynomial index must be >= 1");
    PsiTable t = build_psi(e, n);
    DivisionPolynomial out;
    out.n = n;
    out.has_z_factor = (n % 2 == 0);
    out.x_part = t.f[n];
    return out;
}

BigRational evaluate_psi(const WeierstrassModel& e, unsigned n,
                         const CurvePoint& p) {
    if (p.is_infinity())
        throw std::domain_error("psi evaluation needs a finite point");
    DivisionPolynomial d = division_polynomial(e, n);
    BigRational v = d.x_part.evaluate({p.x()});
    if (d.has_z_factor) {
        const BigRational z =
            2 * p.y() + BigRational(e.a1()) * p.x() + BigRational(e.a3());
        v = v * z;
    }
    return v;
}

}  // namespace ecs
