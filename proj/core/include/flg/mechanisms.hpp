#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "flg/model.hpp"
#include "flg/oracle.hpp"
#include "flg/zones.hpp"

namespace flg {

/// Every deterministic mechanism the audit can drive. OptSum/OptMax wrap the
/// brute-force optimum as a (deliberately manipulable) mechanism so the
/// deviation search can demonstrate that the optimum is not strategyproof;
/// OrderStat(i) places at the zone pair of the i-th smallest report.
enum class MechKind { M1, M2, M3, M4, SC, MC, OptSum, OptMax, OrderStat };

struct MechanismId {
  MechKind kind = MechKind::M1;
  std::size_t order_index = 0;  // 1-based, OrderStat only

  /// Accepts: m1 m2 m3 m4 sc mc opt-sc opt-mc orderstat:<i>
  static MechanismId parse(std::string_view text);
  std::string str() const;
  bool operator==(const MechanismId&) const = default;
};

/// Zone pair of the (lower) median report. Requires every agent to want both
/// facilities; throws std::invalid_argument("compulsory setting required").
Placement mechanism_1(const Instance& inst);

/// Zone pair of the leftmost report; same precondition as mechanism_1.
Placement mechanism_2(const Instance& inst);

/// Median-based placement with optional preferences: when some agents want
/// both facilities, the zone pair of their median; otherwise each facility is
/// placed by the single-facility median rule, larger client class first (ties
/// to F1), the second over the remaining slots. A facility with no clients
/// takes the smallest unused slot.
Placement mechanism_3(const Instance& inst);

/// Leftmost-based counterpart of mechanism_3: zone pair of the leftmost
/// report among agents wanting both, else per-facility leftmost rule with F1
/// placed first when it has clients.
Placement mechanism_4(const Instance& inst);

struct CandidateChoice {
  std::size_t slot = 0;
  Rational coordinate;
};

/// Single-facility subroutine: the candidate closest to the (lower) median of
/// the locations, ties to the first (leftmost) slot. Throws on empty inputs.
CandidateChoice sc_mechanism(std::span<const Rational> locations,
                             std::span<const Rational> candidates);

/// Same with the leftmost location in place of the median.
CandidateChoice mc_mechanism(std::span<const Rational> locations,
                             std::span<const Rational> candidates);

/// Uniform dispatch. sc/mc require every agent to prefer F1 (the
/// single-facility setting); F1 is placed by the subroutine and F2 on the
/// smallest unused slot, which no agent's cost depends on. Preconditions of
/// the dispatched mechanism propagate as exceptions.
Placement run_mechanism(const MechanismId& mech, const Instance& inst);

}  // namespace flg
