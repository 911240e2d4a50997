#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "flg/model.hpp"
#include "flg/rational.hpp"

namespace flg {

/// The adjacent-pair structure over the sorted alternative multiset
/// a_0 <= ... <= a_{m-1}: the m-1 candidate pairs (a_k, a_{k+1}) and the m-2
/// borders (a_k + a_{k+2}) / 2 separating their zones. Zone k is the
/// right-closed interval (border_{k-1}, border_k]; the first zone extends to
/// -inf and the last to +inf. Borders are nondecreasing, and a zone can be
/// empty when duplicates collapse consecutive borders — such zones are kept
/// so pair indices always line up with slot indices.
class ZoneMap {
 public:
  /// Builds from a multiset of alternatives (sorted internally).
  /// Throws std::invalid_argument("insufficient alternatives") when m < 2.
  explicit ZoneMap(std::vector<Rational> alternatives);

  std::size_t pair_count() const { return alternatives_.size() - 1; }
  const std::vector<Rational>& alternatives() const { return alternatives_; }
  const std::vector<Rational>& borders() const { return borders_; }

  std::pair<Rational, Rational> pair_coords(std::size_t k) const;
  Placement pair_placement(std::size_t k) const { return Placement{k, k + 1}; }

  /// Zone of a point: the smallest k with point <= borders()[k], or the last
  /// pair when the point lies right of every border. Equivalent to membership
  /// in the right-closed zone intervals, and always a minimizer of
  /// pair_cost(point, pair_coords(k)).
  std::size_t zone_of(const Rational& point) const;

  bool operator==(const ZoneMap&) const = default;

 private:
  std::vector<Rational> alternatives_;
  std::vector<Rational> borders_;
};

ZoneMap build_zone_map(const Instance& inst);

/// The point's favorite adjacent pair, i.e. ZoneMap::zone_of.
std::size_t peak_of(const Rational& point, const ZoneMap& zmap);

/// max(|point - a|, |point - b|): the cost a point pays for a pair.
Rational pair_cost(const Rational& point, const std::pair<Rational, Rational>& pair);

}  // namespace flg
