#include "flg/oracle.hpp"

#include <stdexcept>

#include "flg/zones.hpp"
#include "internal.hpp"

namespace flg {

std::string_view to_string(Objective o) {
  return o == Objective::SumCost ? "sum" : "max";
}

Objective objective_from_string(std::string_view text) {
  if (text == "sum") return Objective::SumCost;
  if (text == "max") return Objective::MaxCost;
  throw std::invalid_argument("unknown objective \"" + std::string(text) +
                              "\" (expected sum or max)");
}

Rational placement_cost(const Placement& p, const Instance& inst, Objective o) {
  return o == Objective::SumCost ? sum_cost(p, inst) : max_cost(p, inst);
}

namespace detail {

Rational span_placement_cost(const Placement& p, std::span<const Rational> locations,
                             std::span<const Preference> prefs,
                             const std::vector<Rational>& alts, Objective o) {
  Rational acc = span_agent_cost(p, locations[0], prefs[0], alts);
  for (std::size_t i = 1; i < locations.size(); ++i) {
    Rational c = span_agent_cost(p, locations[i], prefs[i], alts);
    if (o == Objective::SumCost) {
      acc += c;
    } else if (acc < c) {
      acc = std::move(c);
    }
  }
  return acc;
}

OptResult span_brute_force(std::span<const Rational> locations,
                           std::span<const Preference> prefs,
                           const std::vector<Rational>& alts, Objective o,
                           bool collect_all) {
  OptResult best;
  bool have = false;
  for (std::size_t s1 = 0; s1 < alts.size(); ++s1) {
    for (std::size_t s2 = 0; s2 < alts.size(); ++s2) {
      if (s1 == s2) continue;
      const Placement p{s1, s2};
      Rational value = span_placement_cost(p, locations, prefs, alts, o);
      if (!have || value < best.value) {
        best.placement = p;
        best.value = std::move(value);
        if (collect_all) {
          best.all_optima.clear();
          best.all_optima.push_back(p);
        }
        have = true;
      } else if (collect_all && value == best.value) {
        best.all_optima.push_back(p);
      }
    }
  }
  return best;
}

const Rational& subset_order_stat(std::span<const Rational> locations,
                                  std::span<const std::size_t> idx, std::size_t i) {
  // Insertion sort over a small index buffer; subsets here have at most a
  // handful of agents.
  std::vector<std::size_t> order(idx.begin(), idx.end());
  for (std::size_t a = 1; a < order.size(); ++a) {
    std::size_t key = order[a];
    std::size_t b = a;
    while (b > 0 && locations[key] < locations[order[b - 1]]) {
      order[b] = order[b - 1];
      --b;
    }
    order[b] = key;
  }
  return locations[order[i - 1]];
}

std::size_t nearest_slot(const Rational& target, const std::vector<Rational>& alts,
                         std::span<const std::size_t> slots) {
  std::size_t best = slots[0];
  Rational best_dist = abs_diff(alts[best], target);
  for (std::size_t j = 1; j < slots.size(); ++j) {
    Rational dist = abs_diff(alts[slots[j]], target);
    if (dist < best_dist) {
      best = slots[j];
      best_dist = std::move(dist);
    }
  }
  return best;
}

}  // namespace detail

namespace {

std::vector<Preference> preferences_of(const Instance& inst) {
  std::vector<Preference> prefs;
  prefs.reserve(inst.agent_count());
  for (const Agent& a : inst.agents()) prefs.push_back(a.pref);
  return prefs;
}

void require_compulsory(const Instance& inst) {
  if (!inst.is_compulsory()) throw std::invalid_argument("compulsory setting required");
}

}  // namespace

OptResult brute_force_opt(const Instance& inst, Objective o) {
  const auto locations = inst.locations();
  const auto prefs = preferences_of(inst);
  return detail::span_brute_force(locations, prefs, inst.alternatives(), o,
                                  /*collect_all=*/true);
}

OptResult opt_sum_in_ap(const Instance& inst) {
  require_compulsory(inst);
  OptResult best;
  bool have = false;
  const std::size_t m = inst.alternative_count();
  for (std::size_t k = 0; k + 1 < m; ++k) {
    const Placement p{k, k + 1};
    Rational value = sum_cost(p, inst);
    if (!have || value < best.value) {
      best.placement = p;
      best.value = value;
      best.all_optima.clear();
      best.all_optima.push_back(p);
      have = true;
    } else if (value == best.value) {
      best.all_optima.push_back(p);
    }
  }
  return best;
}

OptResult opt_max_center_peak(const Instance& inst) {
  require_compulsory(inst);
  const ZoneMap zmap = build_zone_map(inst);
  const auto locations = inst.locations();
  const Rational center = statistics(locations).center;
  const Placement p = zmap.pair_placement(zmap.zone_of(center));
  OptResult result;
  result.placement = p;
  result.value = max_cost(p, inst);
  result.all_optima.push_back(p);
  return result;
}

}  // namespace flg
