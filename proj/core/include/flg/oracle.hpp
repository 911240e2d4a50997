#pragma once

#include <string_view>
#include <vector>

#include "flg/model.hpp"

namespace flg {

enum class Objective { SumCost, MaxCost };

std::string_view to_string(Objective o);
Objective objective_from_string(std::string_view text);

Rational placement_cost(const Placement& p, const Instance& inst, Objective o);

/// Result of an exact optimization over placements.
struct OptResult {
  Placement placement;  // lexicographically smallest (slot1, slot2) optimum
  Rational value;
  std::vector<Placement> all_optima;  // every placement attaining value
};

/// Ground truth: exhaustive minimum over all m*(m-1) ordered distinct-slot
/// pairs. Deterministic; ties resolved lexicographically on (slot1, slot2).
OptResult brute_force_opt(const Instance& inst, Objective o);

/// Sum-cost minimum restricted to the m-1 adjacent pairs. Only valid when
/// every agent wants both facilities; throws
/// std::invalid_argument("compulsory setting required") otherwise. On such
/// instances the value always equals the brute-force optimum.
OptResult opt_sum_in_ap(const Instance& inst);

/// The adjacent pair at the zone of the center location cen(x), which is a
/// max-cost optimum on instances where every agent wants both facilities.
/// Throws like opt_sum_in_ap on other instances.
OptResult opt_max_center_peak(const Instance& inst);

}  // namespace flg
