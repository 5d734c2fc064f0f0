#pragma once
/**
 * @file stable.hpp
 * @brief Stably S-integral points: the minimal-model classifier, the stably
 *        minimal descriptor, filtered enumeration, and the quadratic-twist
 *        cross-check at semistabilizable primes.
 *
 * A rational point P != O is stably S-integral when, at every prime p not in
 * S, it keeps integral coordinates on the global minimal model and, at primes
 * of additive reduction, its reduction avoids the identity component (i.e. it
 * lands on the singular point of the reduced equation). S must contain 2 and
 * 3; those primes are never classified.
 */
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ecs/tate.hpp"

namespace ecs {

enum class StableStatus {
    in_S,                         // prime excluded from classification
    good_integral,                // good reduction, v_p(x) >= 0
    mult_integral,                // multiplicative reduction, v_p(x) >= 0
    additive_nonidentity,         // additive, reduces onto the singular point
    meets_zero_section,           // v_p(x) < 0
    additive_identity_component,  // additive, reduces to a smooth point
};

std::string to_string(StableStatus s);

// True for the two statuses that block stable integrality.
bool is_blocking(StableStatus s);

struct StableReport {
    WeierstrassModel curve;  // global minimal model of the input
    CurvePoint point;        // input point transported to the minimal model
    std::vector<BigInt> S;   // sorted, deduplicated
    bool verdict = false;
    // Sorted by prime; covers every prime dividing the denominator of x and
    // every bad prime of the minimal model.
    std::vector<std::pair<BigInt, StableStatus>> per_prime_evidence;
};

/**
 * The data cut out of the Neron model: the zero section is always removed,
 * and at each additive prime the identity component is removed as well. On
 * the minimal Weierstrass model the complement of the identity component in
 * the special fiber is the singular point, recorded here per prime.
 */
struct StablyMinimalDescriptor {
    WeierstrassModel minimal_model;
    bool zero_section_removed = true;
    // (p, singular point mod p of the reduced minimal equation), sorted by p.
    std::vector<std::pair<BigInt, std::pair<BigInt, BigInt>>> additive_primes;
};

StablyMinimalDescriptor stably_minimal_descriptor(const WeierstrassModel& e);

/**
 * Classifies P at every relevant prime. Throws std::invalid_argument when S
 * does not contain both 2 and 3 (or contains a non-prime) and
 * std::domain_error when P is the point at infinity or not on the curve. The
 * answer depends only on the curve up to coordinate change: everything is
 * computed on the global minimal model.
 */
StableReport is_stably_integral(const WeierstrassModel& e, const CurvePoint& p,
                                const std::vector<BigInt>& s);

/**
 * search_s_integral_points on the minimal model, filtered by the classifier.
 * Returned points live on the minimal model, in (x, y) order.
 */
std::vector<CurvePoint> enumerate_stably_integral(const WeierstrassModel& e,
                                                  const std::vector<BigInt>& s,
                                                  const BigInt& height,
                                                  unsigned jobs = 1);

/**
 * Independent check of the classifier at a prime p >= 5 where the reduction
 * type is I0* or In*: exactly those additive types become good or
 * multiplicative after the quadratic twist by p. The twist is built
 * explicitly, P's x-coordinate is transported onto the twist's minimal model
 * (the y-coordinate needs sqrt(p) and never enters an integrality test), and
 * the direct integrality of the transported point is compared with the
 * classifier's per-prime status.
 *
 * Returns nullopt when the reduction type at p is anything else (the twist
 * cannot semistabilize it, so the check does not apply); otherwise true when
 * the two answers agree. Throws std::invalid_argument for p in {2,3} or p not
 * prime, std::domain_error for P = O or P off the curve, and std::logic_error
 * if the constructed twist fails to be semistable at p (impossible for
 * eligible input).
 */
std::optional<bool> twist_cross_check(const WeierstrassModel& e,
                                      const CurvePoint& p,
                                      const BigInt& prime);

}  // namespace ecs
