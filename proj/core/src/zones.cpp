#include "flg/zones.hpp"

#include <algorithm>
#include <stdexcept>

namespace flg {

ZoneMap::ZoneMap(std::vector<Rational> alternatives)
    : alternatives_(std::move(alternatives)) {
  if (alternatives_.size() < 2) throw std::invalid_argument("insufficient alternatives");
  std::sort(alternatives_.begin(), alternatives_.end());
  const std::size_t m = alternatives_.size();
  borders_.reserve(m >= 2 ? m - 2 : 0);
  for (std::size_t k = 0; k + 2 < m; ++k) {
    borders_.push_back(Rational::midpoint(alternatives_[k], alternatives_[k + 2]));
  }
}

std::pair<Rational, Rational> ZoneMap::pair_coords(std::size_t k) const {
  return {alternatives_.at(k), alternatives_.at(k + 1)};
}

std::size_t ZoneMap::zone_of(const Rational& point) const {
  for (std::size_t k = 0; k < borders_.size(); ++k) {
    if (point <= borders_[k]) return k;
  }
  return pair_count() - 1;
}

ZoneMap build_zone_map(const Instance& inst) { return ZoneMap(inst.alternatives()); }

std::size_t peak_of(const Rational& point, const ZoneMap& zmap) {
  return zmap.zone_of(point);
}

Rational pair_cost(const Rational& point, const std::pair<Rational, Rational>& pair) {
  return max(abs_diff(point, pair.first), abs_diff(point, pair.second));
}

}  // namespace flg
