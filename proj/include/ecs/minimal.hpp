#pragma once
/**
 * @file minimal.hpp
 * @brief Global minimal models via the c4/c6 method: scale exponents from
 *        invariant valuations, 2- and 3-adic admissibility corrections, and
 *        reconstruction of the reduced model from (c4, c6).
 */
#include <optional>

#include "ecs/weierstrass.hpp"

namespace ecs {

struct MinimalModelResult {
    WeierstrassModel model;  // global minimal model, reduced coefficients
    ModelMap map;            // source -> minimal; map.u is the integer u
    BigInt u;                // scale: disc(source) = u^12 * disc(minimal)
};

MinimalModelResult minimalize(const WeierstrassModel& e);

bool is_minimal(const WeierstrassModel& e);
bool is_minimal_at(const WeierstrassModel& e, const BigInt& p);

// True when some integral model has these invariants (2- and 3-adic
// admissibility plus the 1728 relation with nonzero discriminant).
bool invariants_admissible(const BigInt& c4, const BigInt& c6);

// The reduced integral model with invariants (c4, c6): a1, a3 in {0, 1},
// a2 in {-1, 0, 1}. Empty when the pair is not admissible.
std::optional<WeierstrassModel> model_from_c4c6(const BigInt& c4,
                                                const BigInt& c6);

}  // namespace ecs
