#include "flg/mechanisms.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

#include "internal.hpp"

namespace flg {

MechanismId MechanismId::parse(std::string_view text) {
  if (text == "m1") return {MechKind::M1};
  if (text == "m2") return {MechKind::M2};
  if (text == "m3") return {MechKind::M3};
  if (text == "m4") return {MechKind::M4};
  if (text == "sc") return {MechKind::SC};
  if (text == "mc") return {MechKind::MC};
  if (text == "opt-sc") return {MechKind::OptSum};
  if (text == "opt-mc") return {MechKind::OptMax};
  constexpr std::string_view kPrefix = "orderstat:";
  if (text.starts_with(kPrefix)) {
    const std::string_view digits = text.substr(kPrefix.size());
    std::size_t index = 0;
    const auto [ptr, ec] = std::from_chars(digits.begin(), digits.end(), index);
    if (ec == std::errc() && ptr == digits.end() && index >= 1) {
      return {MechKind::OrderStat, index};
    }
  }
  throw std::invalid_argument("unknown mechanism \"" + std::string(text) + "\"");
}

std::string MechanismId::str() const {
  switch (kind) {
    case MechKind::M1: return "m1";
    case MechKind::M2: return "m2";
    case MechKind::M3: return "m3";
    case MechKind::M4: return "m4";
    case MechKind::SC: return "sc";
    case MechKind::MC: return "mc";
    case MechKind::OptSum: return "opt-sc";
    case MechKind::OptMax: return "opt-mc";
    case MechKind::OrderStat: return "orderstat:" + std::to_string(order_index);
  }
  throw std::logic_error("unreachable mechanism kind");
}

namespace detail {

namespace {

void require_compulsory(const Instance& inst) {
  if (!inst.is_compulsory()) throw std::invalid_argument("compulsory setting required");
}

void require_single_facility(const Instance& inst) {
  for (const Agent& a : inst.agents()) {
    if (a.pref != Preference::F1Only) {
      throw std::invalid_argument("single-facility setting required (every agent f1)");
    }
  }
}

}  // namespace

Evaluator::Evaluator(const Instance& inst, const MechanismId& mech)
    : mech_(mech),
      alternatives_(inst.alternatives()),
      zmap_(inst.alternatives()),
      part_(partition_by_preference(inst)) {
  prefs_.reserve(inst.agent_count());
  for (const Agent& a : inst.agents()) prefs_.push_back(a.pref);
  all_agents_.resize(inst.agent_count());
  std::iota(all_agents_.begin(), all_agents_.end(), std::size_t{0});
  all_slots_.resize(alternatives_.size());
  std::iota(all_slots_.begin(), all_slots_.end(), std::size_t{0});

  switch (mech_.kind) {
    case MechKind::M1:
    case MechKind::M2:
      require_compulsory(inst);
      break;
    case MechKind::OrderStat:
      require_compulsory(inst);
      if (mech_.order_index < 1 || mech_.order_index > inst.agent_count()) {
        throw std::out_of_range("order statistic index out of range");
      }
      break;
    case MechKind::SC:
    case MechKind::MC:
      require_single_facility(inst);
      break;
    case MechKind::M3:
    case MechKind::M4:
    case MechKind::OptSum:
    case MechKind::OptMax:
      break;
  }
}

Placement Evaluator::eval_two_sided(std::span<const Rational> locations,
                                    bool median_rule) const {
  // Placement with no agent wanting both facilities: each facility follows
  // its own client class; a facility without clients takes the smallest slot
  // the other one left free.
  const auto pick = [&](std::span<const std::size_t> clients,
                        std::span<const std::size_t> slots) {
    const Rational& anchor = median_rule ? subset_lower_median(locations, clients)
                                         : subset_min(locations, clients);
    return nearest_slot(anchor, alternatives_, slots);
  };
  const auto remaining = [&](std::size_t used) {
    std::vector<std::size_t> rest;
    rest.reserve(all_slots_.size() - 1);
    for (std::size_t s : all_slots_) {
      if (s != used) rest.push_back(s);
    }
    return rest;
  };

  const bool f1_first = median_rule ? part_.f1_only.size() >= part_.f2_only.size()
                                    : !part_.f1_only.empty();
  const auto& first_clients = f1_first ? part_.f1_only : part_.f2_only;
  const auto& second_clients = f1_first ? part_.f2_only : part_.f1_only;

  const std::size_t first_slot = pick(first_clients, all_slots_);
  const auto rest = remaining(first_slot);
  const std::size_t second_slot =
      second_clients.empty() ? rest.front() : pick(second_clients, rest);

  return f1_first ? Placement{first_slot, second_slot}
                  : Placement{second_slot, first_slot};
}

Placement Evaluator::eval(std::span<const Rational> locations) const {
  switch (mech_.kind) {
    case MechKind::M1:
      return zmap_.pair_placement(
          zmap_.zone_of(subset_lower_median(locations, all_agents_)));
    case MechKind::M2:
      return zmap_.pair_placement(zmap_.zone_of(subset_min(locations, all_agents_)));
    case MechKind::OrderStat:
      return zmap_.pair_placement(
          zmap_.zone_of(subset_order_stat(locations, all_agents_, mech_.order_index)));
    case MechKind::SC:
    case MechKind::MC: {
      const Rational& anchor = mech_.kind == MechKind::SC
                                   ? subset_lower_median(locations, all_agents_)
                                   : subset_min(locations, all_agents_);
      const std::size_t slot = nearest_slot(anchor, alternatives_, all_slots_);
      return Placement{slot, slot == 0 ? std::size_t{1} : std::size_t{0}};
    }
    case MechKind::M3:
      if (!part_.both.empty()) {
        return zmap_.pair_placement(
            zmap_.zone_of(subset_lower_median(locations, part_.both)));
      }
      return eval_two_sided(locations, /*median_rule=*/true);
    case MechKind::M4:
      if (!part_.both.empty()) {
        return zmap_.pair_placement(zmap_.zone_of(subset_min(locations, part_.both)));
      }
      return eval_two_sided(locations, /*median_rule=*/false);
    case MechKind::OptSum:
    case MechKind::OptMax:
      return span_brute_force(locations, prefs_, alternatives_,
                              mech_.kind == MechKind::OptSum ? Objective::SumCost
                                                             : Objective::MaxCost,
                              /*collect_all=*/false)
          .placement;
  }
  throw std::logic_error("unreachable mechanism kind");
}

}  // namespace detail

Placement run_mechanism(const MechanismId& mech, const Instance& inst) {
  const detail::Evaluator evaluator(inst, mech);
  return evaluator.eval(inst.locations());
}

Placement mechanism_1(const Instance& inst) { return run_mechanism({MechKind::M1}, inst); }
Placement mechanism_2(const Instance& inst) { return run_mechanism({MechKind::M2}, inst); }
Placement mechanism_3(const Instance& inst) { return run_mechanism({MechKind::M3}, inst); }
Placement mechanism_4(const Instance& inst) { return run_mechanism({MechKind::M4}, inst); }

namespace {

CandidateChoice choose_nearest(const Rational& anchor,
                               std::span<const Rational> candidates) {
  std::size_t best = 0;
  Rational best_dist = abs_diff(candidates[0], anchor);
  for (std::size_t j = 1; j < candidates.size(); ++j) {
    Rational dist = abs_diff(candidates[j], anchor);
    if (dist < best_dist) {
      best = j;
      best_dist = std::move(dist);
    }
  }
  return CandidateChoice{best, candidates[best]};
}

}  // namespace

CandidateChoice sc_mechanism(std::span<const Rational> locations,
                             std::span<const Rational> candidates) {
  if (candidates.empty()) throw std::invalid_argument("empty candidate set");
  return choose_nearest(statistics(locations).median, candidates);
}

CandidateChoice mc_mechanism(std::span<const Rational> locations,
                             std::span<const Rational> candidates) {
  if (candidates.empty()) throw std::invalid_argument("empty candidate set");
  return choose_nearest(statistics(locations).leftmost, candidates);
}

}  // namespace flg
