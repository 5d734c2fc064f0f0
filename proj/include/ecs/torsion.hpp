#pragma once
/**
 * @file torsion.hpp
 * @brief Torsion subgroups over Q by the integral-candidate method, the
 *        prime-power integrality threshold with its symplectic constant, the
 *        explicit image bound, and a corpus audit that certified torsion
 *        points stay (stably) integral.
 */
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ecs/arith.hpp"
#include "ecs/stable.hpp"
#include "ecs/weierstrass.hpp"

namespace ecs {

struct TorsionPoint {
    CurvePoint point = CurvePoint::infinity();  // on the minimal model
    unsigned order = 1;

    bool operator==(const TorsionPoint& o) const {
        return point == o.point && order == o.order;
    }
};

struct TorsionGroup {
    WeierstrassModel minimal_model;
    unsigned order = 1;
    // {} trivial, {n} cyclic, {2, m} for the two-cyclic case.
    std::vector<unsigned> invariant_factors;
    std::vector<TorsionPoint> points;  // infinity first, then x-then-y order
    unsigned search_cap = 12;          // largest point order certified

    std::string structure() const;  // "trivial", "Z/6", "Z/2 x Z/6"
};

/**
 * Full torsion subgroup of E(Q), computed on the minimal model. Candidates
 * come from the integral-coordinate theorem on the completed-square model
 * (y = 0 or y^2 dividing the discriminant); every candidate's order is
 * certified by explicit multiples up to `search_cap`, never assumed. Output
 * is identical for every rescaled model of the same curve.
 */
TorsionGroup torsion_subgroup(const WeierstrassModel& e);

/**
 * |Sp_g(Z/5Z)| for 2g x 2g symplectic matrices: g = 1 by brute-force count
 * of determinant-1 matrices over F_5, g > 1 by the order formula
 * 5^(g^2) * prod_{i=1..g} (5^(2i) - 1). Throws std::domain_error for g = 0.
 */
BigInt symplectic_group_order(unsigned g);

struct ThresholdVerdict {
    BigInt n;
    unsigned d = 1;
    unsigned g = 1;
    BigInt c;  // symplectic constant for this g
    bool satisfied = false;
    // Present when n = p^k: the pair (p, k).
    std::optional<std::pair<BigInt, unsigned>> prime_power;
};

/**
 * Evaluates the integrality threshold hypothesis exactly: satisfied when n is
 * not a prime power, or when n = p^k with p^k - p^(k-1) > C d. Throws
 * std::domain_error for n < 2, d < 1, or g < 1.
 */
ThresholdVerdict stable_integrality_threshold(const BigInt& n, unsigned d,
                                              unsigned g);

/**
 * Explicit cardinality bound (1 + p^ceil(Cd/2))^(2g) * (2Cd)^(2g) with
 * C = symplectic_group_order(g); the first factor is the Weil-type count,
 * the second bounds the kernel contribution. Monotone in each argument.
 * Throws std::domain_error when p is not prime, d < 1, or g < 1.
 */
BigInt corollary_bound(unsigned d, unsigned g, const BigInt& p);

/**
 * Integral model with (0, 0) an order-n torsion candidate: n = 3 uses the
 * cuspidal family y^2 + xy + t y = x^3, n in 4..10 the one-parameter normal
 * form y^2 + (1-c)xy - by = x^3 - bx^2 with (b, c) the classical functions
 * of t, cleared to integer coefficients by rescaling (which fixes (0, 0)).
 * The order is a candidate only; certify with torsion_subgroup. Throws
 * std::domain_error for n outside 3..10 or parameters giving a singular
 * curve.
 */
WeierstrassModel tate_normal_curve(unsigned n, const BigRational& t);

/**
 * Deterministic corpus: for each order n in 3..10, the first `per_order`
 * integer parameters t >= 1 whose normal-form curve has a certified point of
 * order exactly n. Throws std::domain_error if some order cannot be realized
 * within the parameter budget.
 */
std::vector<WeierstrassModel> torsion_corpus(unsigned per_order);

struct TorsionPointAudit {
    CurvePoint point = CurvePoint::infinity();  // on the minimal model
    unsigned order = 0;
    bool integral = false;  // integer coordinates on the minimal model
    bool stable = false;    // stably S-integral verdict
    bool anomaly = false;   // odd order >= 3 blocked at a prime not dividing it
    std::vector<std::pair<BigInt, StableStatus>> evidence;
};

struct CurveAudit {
    WeierstrassModel curve;  // corpus entry as given
    TorsionGroup torsion;
    std::vector<TorsionPointAudit> audited;  // points of order >= 3
};

struct AuditReport {
    std::vector<CurveAudit> curves;
    std::size_t points_audited = 0;
    std::size_t anomalies = 0;
};

/**
 * For every torsion point of order >= 3 on every corpus curve: records
 * integrality on the minimal model and the stable-integrality verdict with
 * its per-prime evidence. A point of odd order >= 3 blocked at a prime not
 * dividing its order is flagged as an anomaly. S must contain 2 and 3
 * (std::invalid_argument otherwise). Parallel over curves; output does not
 * depend on the worker count.
 */
AuditReport audit_corpus(const std::vector<WeierstrassModel>& corpus,
                         const std::vector<BigInt>& s, unsigned jobs = 1);

}  // namespace ecs
