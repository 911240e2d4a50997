#include "flg/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace flg {

std::string_view to_string(Preference p) {
  switch (p) {
    case Preference::F1Only: return "f1";
    case Preference::F2Only: return "f2";
    case Preference::Both: return "both";
  }
  throw std::logic_error("unreachable preference");
}

Preference preference_from_string(std::string_view text) {
  if (text == "f1") return Preference::F1Only;
  if (text == "f2") return Preference::F2Only;
  if (text == "both") return Preference::Both;
  throw std::invalid_argument("unknown preference \"" + std::string(text) +
                              "\" (expected f1, f2 or both)");
}

Instance::Instance(std::vector<Agent> agents, std::vector<Rational> alternatives)
    : agents_(std::move(agents)), alternatives_(std::move(alternatives)) {
  if (agents_.empty()) throw std::invalid_argument("instance needs at least one agent");
  if (alternatives_.size() < 2) throw std::invalid_argument("insufficient alternatives");
  std::sort(alternatives_.begin(), alternatives_.end());
}

std::vector<Rational> Instance::locations() const {
  std::vector<Rational> out;
  out.reserve(agents_.size());
  for (const Agent& a : agents_) out.push_back(a.location);
  return out;
}

bool Instance::is_compulsory() const {
  return std::all_of(agents_.begin(), agents_.end(),
                     [](const Agent& a) { return a.pref == Preference::Both; });
}

bool Instance::is_valid_placement(const Placement& p) const {
  return p.slot1 != p.slot2 && p.slot1 < alternatives_.size() &&
         p.slot2 < alternatives_.size();
}

namespace {

void require_valid(const Placement& p, const Instance& inst) {
  if (!inst.is_valid_placement(p)) throw std::invalid_argument("invalid placement");
}

}  // namespace

Rational agent_cost(const Placement& p, const Rational& location, Preference pref,
                    const Instance& inst) {
  require_valid(p, inst);
  if (pref == Preference::F1Only) return abs_diff(inst.alternative(p.slot1), location);
  if (pref == Preference::F2Only) return abs_diff(inst.alternative(p.slot2), location);
  return max(abs_diff(inst.alternative(p.slot1), location),
             abs_diff(inst.alternative(p.slot2), location));
}

Rational agent_cost(const Placement& p, const Agent& agent, const Instance& inst) {
  return agent_cost(p, agent.location, agent.pref, inst);
}

Rational sum_cost(const Placement& p, const Instance& inst) {
  require_valid(p, inst);
  Rational total = 0;
  for (const Agent& a : inst.agents()) total += agent_cost(p, a, inst);
  return total;
}

Rational max_cost(const Placement& p, const Instance& inst) {
  require_valid(p, inst);
  Rational worst = agent_cost(p, inst.agent(0), inst);
  for (std::size_t i = 1; i < inst.agent_count(); ++i) {
    worst = max(worst, agent_cost(p, inst.agent(i), inst));
  }
  return worst;
}

PreferencePartition partition_by_preference(const Instance& inst) {
  PreferencePartition part;
  for (std::size_t i = 0; i < inst.agent_count(); ++i) {
    switch (inst.agent(i).pref) {
      case Preference::F1Only: part.f1_only.push_back(i); break;
      case Preference::F2Only: part.f2_only.push_back(i); break;
      case Preference::Both: part.both.push_back(i); break;
    }
  }
  return part;
}

LocationStats statistics(std::span<const Rational> locations) {
  if (locations.empty()) throw std::invalid_argument("empty location set");
  LocationStats s;
  s.leftmost = locations[0];
  s.rightmost = locations[0];
  for (const Rational& x : locations.subspan(1)) {
    if (x < s.leftmost) s.leftmost = x;
    if (s.rightmost < x) s.rightmost = x;
  }
  s.center = Rational::midpoint(s.leftmost, s.rightmost);
  s.median = order_stat(locations, (locations.size() + 1) / 2);
  return s;
}

Rational order_stat(std::span<const Rational> locations, std::size_t i) {
  if (i < 1 || i > locations.size()) {
    throw std::out_of_range("order statistic index out of range");
  }
  std::vector<Rational> sorted(locations.begin(), locations.end());
  std::nth_element(sorted.begin(), sorted.begin() + (i - 1), sorted.end());
  return sorted[i - 1];
}

}  // namespace flg
