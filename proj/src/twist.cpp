#include "ecs/twist.hpp"

#include <stdexcept>

#include "ecs/factor.hpp"
#include "ecs/parallel.hpp"
#include "ecs/search.hpp"

namespace ecs {
namespace {

void validate_cubic(const TwistCubic& f) {
    if (gcd(f.a, f.b) != 1)
        throw std::domain_error("twist cubic needs coprime coefficients");
    if (f.discriminant() == 0)
        throw std::domain_error("twist cubic is singular");
}

void validate_t(const BigInt& t) {
    if (t == 0 || !is_squarefree(t))
        throw std::domain_error(
            "twist parameter must be a squarefree nonzero integer");
}

CurvePoint checked_twisted_point(const TwistCubic& f, const BigInt& t,
                                 const CurvePoint& p) {
    if (p.is_infinity())
        throw std::domain_error("surface map needs affine points");
    const BigRational lhs = BigRational(t) * p.y() * p.y();
    if (lhs != f.evaluate(p.x()))
        throw std::domain_error("point is not on the twisted curve");
    return p;
}

}  // namespace

BigRational TwistCubic::evaluate(const BigRational& x) const {
    return BigRational(x * x * x + BigRational(a) * x + BigRational(b));
}

BigInt TwistCubic::discriminant() const {
    return BigInt(-4 * a * a * a - 27 * b * b);
}

CurvePoint TwistedCurve::to_model(const CurvePoint& p) const {
    if (p.is_infinity()) return p;
    const BigRational tq(t);
    return CurvePoint(BigRational(tq * p.x()), BigRational(tq * tq * p.y()));
}

CurvePoint TwistedCurve::from_model(const CurvePoint& p) const {
    if (p.is_infinity()) return p;
    const BigRational tq(t);
    return CurvePoint(BigRational(p.x() / tq), BigRational(p.y() / (tq * tq)));
}

TwistedCurve twist_curve(const TwistCubic& f, const BigInt& t) {
    validate_cubic(f);
    validate_t(t);
    const WeierstrassModel model = WeierstrassModel::short_form(
        BigInt(f.a * t * t), BigInt(f.b * t * t * t));
    return TwistedCurve{model, t};
}

KummerPoint kummer_map(const TwistCubic& f, const BigInt& t,
                       const CurvePoint& p1, const CurvePoint& p2) {
    validate_cubic(f);
    validate_t(t);
    checked_twisted_point(f, t, p1);
    checked_twisted_point(f, t, p2);
    const BigRational z = BigRational(BigRational(t) * p1.y() * p2.y());
    return KummerPoint{p1.x(), p2.x(), z};
}

bool on_kummer_surface(const TwistCubic& f, const KummerPoint& k) {
    const BigRational lhs = BigRational(k.z * k.z);
    return lhs == BigRational(f.evaluate(k.x1) * f.evaluate(k.x2));
}

std::vector<TwistScanEntry> twist_scan(const TwistFamily& family,
                                       const std::vector<BigInt>& s_primes,
                                       const BigInt& height, unsigned jobs) {
    validate_cubic(family.f);
    for (const BigInt& t : family.t_range) validate_t(t);

    std::vector<TwistScanEntry> out(family.t_range.size());
    parallel_for(family.t_range.size(), effective_jobs(jobs),
                 [&](std::size_t i) {
                     const BigInt& t = family.t_range[i];
                     const TwistedCurve tc = twist_curve(family.f, t);
                     TwistScanEntry& entry = out[i];
                     entry.t = t;
                     for (const CurvePoint& p :
                          search_s_integral_points(tc.model, s_primes, height))
                         entry.points.push_back(tc.from_model(p));
                     for (const CurvePoint& p : entry.points)
                         for (const CurvePoint& q : entry.points)
                             entry.kummer.push_back(
                                 kummer_map(family.f, t, p, q));
                 });
    return out;
}

}  // namespace ecs
