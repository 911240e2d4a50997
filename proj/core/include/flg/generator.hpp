#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "flg/model.hpp"

namespace flg {

/// Which preference profiles a fuzz corpus draws.
enum class CorpusKind {
  Compulsory,      // every agent wants both facilities
  Optional,        // preference uniform over {F1, F2, both}
  SingleFacility,  // every agent wants F1 only
};

std::string_view to_string(CorpusKind k);
CorpusKind corpus_kind_from_string(std::string_view text);

struct GeneratorConfig {
  std::uint64_t seed = 0;
  int n_min = 1;
  int n_max = 6;
  int m_min = 2;
  int m_max = 6;
  CorpusKind kind = CorpusKind::Optional;
  bool inject_duplicates = true;  // with probability 1/4 copy one alternative over another
};

/// Deterministic instance fuzzer. Coordinates are uniform rationals with
/// denominator 1..100 over [-10, 10]. Only raw mt19937_64 output is consumed
/// (no std distributions), so the same config yields the same corpus on every
/// platform and compiler.
class InstanceGenerator {
 public:
  explicit InstanceGenerator(const GeneratorConfig& cfg);

  Instance next();
  std::vector<Instance> take(std::size_t count);

 private:
  std::uint64_t next_u64() { return rng_(); }
  long next_long(long lo, long hi);  // inclusive
  Rational next_coordinate();

  GeneratorConfig cfg_;
  std::mt19937_64 rng_;
};

}  // namespace flg
