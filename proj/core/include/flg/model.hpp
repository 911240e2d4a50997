#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "flg/rational.hpp"

namespace flg {

/// Which of the two heterogeneous facilities an agent is served by.
/// The empty preference is not representable.
enum class Preference { F1Only, F2Only, Both };

constexpr bool wants_f1(Preference p) { return p != Preference::F2Only; }
constexpr bool wants_f2(Preference p) { return p != Preference::F1Only; }

std::string_view to_string(Preference p);
Preference preference_from_string(std::string_view text);

struct Agent {
  Rational location;
  Preference pref = Preference::Both;
  bool operator==(const Agent&) const = default;
};

/// An ordered pair of distinct slots into the alternative multiset; slot1
/// hosts F1 and slot2 hosts F2. With duplicate alternatives the two slots may
/// carry equal coordinates — the multiset limit is one facility per slot, not
/// per coordinate.
struct Placement {
  std::size_t slot1 = 0;
  std::size_t slot2 = 1;
  bool operator==(const Placement&) const = default;
};

/// One game instance: the agents (location + public facility preference, in
/// reporting order) and the multiset of feasible build locations, kept sorted
/// ascending. Requires at least one agent and at least two slots.
class Instance {
 public:
  Instance(std::vector<Agent> agents, std::vector<Rational> alternatives);

  std::size_t agent_count() const { return agents_.size(); }
  std::size_t alternative_count() const { return alternatives_.size(); }
  const std::vector<Agent>& agents() const { return agents_; }
  const Agent& agent(std::size_t i) const { return agents_.at(i); }
  const std::vector<Rational>& alternatives() const { return alternatives_; }
  const Rational& alternative(std::size_t slot) const { return alternatives_.at(slot); }

  std::vector<Rational> locations() const;
  bool is_compulsory() const;  // every agent wants both facilities
  bool is_valid_placement(const Placement& p) const;

  bool operator==(const Instance&) const = default;

 private:
  std::vector<Agent> agents_;
  std::vector<Rational> alternatives_;  // sorted ascending
};

/// Cost of one agent: distance to the farthest facility she is interested in.
Rational agent_cost(const Placement& p, const Rational& location, Preference pref,
                    const Instance& inst);
Rational agent_cost(const Placement& p, const Agent& agent, const Instance& inst);

Rational sum_cost(const Placement& p, const Instance& inst);
Rational max_cost(const Placement& p, const Instance& inst);

/// Agent indices split by preference class (N1 / N2 / N12).
struct PreferencePartition {
  std::vector<std::size_t> f1_only;
  std::vector<std::size_t> f2_only;
  std::vector<std::size_t> both;
};
PreferencePartition partition_by_preference(const Instance& inst);

struct LocationStats {
  Rational leftmost;
  Rational rightmost;
  Rational center;  // (leftmost + rightmost) / 2
  Rational median;  // lower median: the ceil(n/2)-th smallest location
};

/// Throws std::invalid_argument("empty location set") on an empty span.
LocationStats statistics(std::span<const Rational> locations);

/// The i-th smallest location, 1-based. Throws std::out_of_range.
Rational order_stat(std::span<const Rational> locations, std::size_t i);

}  // namespace flg
