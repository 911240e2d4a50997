#pragma once

// Shared internals: span-based cost primitives and a reusable mechanism
// evaluator. The audit's deviation searches re-run mechanisms thousands of
// times per instance on profiles that differ in a single location, so the
// evaluator front-loads everything that does not depend on locations (zone
// borders, the preference partition, slot lists) and works on location spans
// without rebuilding instances.

#include <cstddef>
#include <span>
#include <vector>

#include "flg/mechanisms.hpp"
#include "flg/model.hpp"
#include "flg/oracle.hpp"
#include "flg/zones.hpp"

namespace flg::detail {

inline Rational span_agent_cost(const Placement& p, const Rational& location,
                                Preference pref, const std::vector<Rational>& alts) {
  if (pref == Preference::F1Only) return abs_diff(alts[p.slot1], location);
  if (pref == Preference::F2Only) return abs_diff(alts[p.slot2], location);
  return max(abs_diff(alts[p.slot1], location), abs_diff(alts[p.slot2], location));
}

Rational span_placement_cost(const Placement& p, std::span<const Rational> locations,
                             std::span<const Preference> prefs,
                             const std::vector<Rational>& alts, Objective o);

/// Exhaustive optimum over ordered distinct slot pairs, lexicographic
/// tie-break. all_optima collection is optional (skipped in hot loops).
OptResult span_brute_force(std::span<const Rational> locations,
                           std::span<const Preference> prefs,
                           const std::vector<Rational>& alts, Objective o,
                           bool collect_all);

/// Value of the i-th smallest (1-based) entry of locations restricted to the
/// given agent indices. No copies of the values are made.
const Rational& subset_order_stat(std::span<const Rational> locations,
                                  std::span<const std::size_t> idx, std::size_t i);

inline const Rational& subset_min(std::span<const Rational> locations,
                                  std::span<const std::size_t> idx) {
  std::size_t best = idx[0];
  for (std::size_t j = 1; j < idx.size(); ++j) {
    if (locations[idx[j]] < locations[best]) best = idx[j];
  }
  return locations[best];
}

inline const Rational& subset_lower_median(std::span<const Rational> locations,
                                           std::span<const std::size_t> idx) {
  return subset_order_stat(locations, idx, (idx.size() + 1) / 2);
}

/// First slot (in the given order) whose coordinate minimizes the distance to
/// target; with sorted alternatives that is the leftmost-coordinate,
/// smallest-index argmin.
std::size_t nearest_slot(const Rational& target, const std::vector<Rational>& alts,
                         std::span<const std::size_t> slots);

/// A mechanism bound to one instance's alternatives and preference profile,
/// evaluable on arbitrary location profiles of the same length. Construction
/// performs the mechanism/instance compatibility checks, so run-time errors
/// surface once instead of per deviation.
class Evaluator {
 public:
  Evaluator(const Instance& inst, const MechanismId& mech);

  Placement eval(std::span<const Rational> locations) const;

  const ZoneMap& zone_map() const { return zmap_; }

 private:
  Placement eval_two_sided(std::span<const Rational> locations, bool median_rule) const;

  MechanismId mech_;
  std::vector<Rational> alternatives_;
  std::vector<Preference> prefs_;
  ZoneMap zmap_;
  PreferencePartition part_;
  std::vector<std::size_t> all_agents_;
  std::vector<std::size_t> all_slots_;
};

}  // namespace flg::detail
