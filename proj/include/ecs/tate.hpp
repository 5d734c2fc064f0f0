#pragma once
/**
 * @file tate.hpp
 * @brief Local reduction data at a prime: Kodaira type, reduction class,
 *        Tamagawa number, conductor exponent, and the singular point of the
 *        special fiber. Works at every prime, including 2 and 3.
 */
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ecs/minimal.hpp"
#include "ecs/weierstrass.hpp"

namespace ecs {

enum class KodairaKind {
    I0, In, II, III, IV, I0star, Instar, IVstar, IIIstar, IIstar
};

struct KodairaType {
    KodairaKind kind = KodairaKind::I0;
    unsigned n = 0;  // fiber index for In / In*; 0 otherwise

    std::string str() const;  // "I0", "I5", "IV", "I2*", "III*", ...
    bool operator==(const KodairaType& o) const {
        return kind == o.kind && n == o.n;
    }
    bool operator!=(const KodairaType& o) const { return !(*this == o); }
};

enum class ReductionClass { good, multiplicative_split, multiplicative_nonsplit, additive };

std::string to_string(ReductionClass c);

struct LocalReduction {
    BigInt p;
    KodairaType kodaira;
    ReductionClass cls = ReductionClass::good;
    long v_discriminant = 0;
    long v_c4 = 0;  // val_infinity when c4 = 0
    long v_c6 = 0;  // val_infinity when c6 = 0
    BigInt tamagawa = 1;
    long conductor_exponent = 0;
    // Coordinates mod p of the singular point of the reduced curve, in the
    // coordinates of the model handed to tate_local. Absent for good
    // reduction.
    std::optional<std::pair<BigInt, BigInt>> singular_point;
};

// Raised when the model is not minimal at the prime under inspection.
class NonMinimalError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Runs the reduction analysis at p. The model must be minimal at p;
// otherwise NonMinimalError is raised.
LocalReduction tate_local(const WeierstrassModel& e, const BigInt& p);

struct GlobalReduction {
    MinimalModelResult minimal;
    std::vector<LocalReduction> places;  // bad primes of the minimal model, ascending
    BigInt conductor = 1;
};

// Minimalizes, then analyzes every bad prime.
GlobalReduction global_reduction(const WeierstrassModel& e);

// Reduction of a rational point mod p on an integral model: coordinates in
// F_p, or absent when the point reduces to infinity. Requires that p not
// divide the denominator of the reduction data in an inconsistent way:
// v_p(x) < 0 forces reduction to infinity.
std::optional<std::pair<BigInt, BigInt>> reduce_point_mod_p(
    const WeierstrassModel& e, const CurvePoint& point, const BigInt& p);

// True when the reduction of `point` lands in the smooth locus of the
// special fiber: infinity or any nonsingular affine point. On a minimal
// model the smooth locus is exactly the identity component of the Neron
// special fiber, at every reduction type.
bool on_identity_component(const WeierstrassModel& e, const CurvePoint& point,
                           const BigInt& p);

}  // namespace ecs
