#include "flg/generator.hpp"

#include <stdexcept>

namespace flg {

std::string_view to_string(CorpusKind k) {
  switch (k) {
    case CorpusKind::Compulsory: return "compulsory";
    case CorpusKind::Optional: return "optional";
    case CorpusKind::SingleFacility: return "single-facility";
  }
  throw std::logic_error("unreachable corpus kind");
}

CorpusKind corpus_kind_from_string(std::string_view text) {
  if (text == "compulsory" || text == "both") return CorpusKind::Compulsory;
  if (text == "optional") return CorpusKind::Optional;
  if (text == "single-facility" || text == "f1") return CorpusKind::SingleFacility;
  throw std::invalid_argument("unknown corpus kind \"" + std::string(text) + "\"");
}

InstanceGenerator::InstanceGenerator(const GeneratorConfig& cfg)
    : cfg_(cfg), rng_(cfg.seed) {
  if (cfg_.n_min < 1 || cfg_.n_max < cfg_.n_min) {
    throw std::invalid_argument("generator: agent count range needs 1 <= n_min <= n_max");
  }
  if (cfg_.m_min < 2 || cfg_.m_max < cfg_.m_min) {
    throw std::invalid_argument(
        "generator: alternative count range needs 2 <= m_min <= m_max");
  }
}

long InstanceGenerator::next_long(long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(next_u64() % span);
}

Rational InstanceGenerator::next_coordinate() {
  const long den = next_long(1, 100);
  const long num = next_long(-10 * den, 10 * den);
  return Rational(num, den);
}

Instance InstanceGenerator::next() {
  const long n = next_long(cfg_.n_min, cfg_.n_max);
  const long m = next_long(cfg_.m_min, cfg_.m_max);

  std::vector<Rational> alternatives;
  alternatives.reserve(static_cast<std::size_t>(m));
  for (long k = 0; k < m; ++k) alternatives.push_back(next_coordinate());
  if (cfg_.inject_duplicates && next_u64() % 4 == 0) {
    const auto into = static_cast<std::size_t>(next_long(0, m - 1));
    auto from = static_cast<std::size_t>(next_long(0, m - 2));
    if (from >= into) ++from;
    alternatives[into] = alternatives[from];
  }

  std::vector<Agent> agents;
  agents.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    Agent agent;
    agent.location = next_coordinate();
    switch (cfg_.kind) {
      case CorpusKind::Compulsory:
        agent.pref = Preference::Both;
        break;
      case CorpusKind::SingleFacility:
        agent.pref = Preference::F1Only;
        break;
      case CorpusKind::Optional: {
        const auto pick = next_u64() % 3;
        agent.pref = pick == 0   ? Preference::F1Only
                     : pick == 1 ? Preference::F2Only
                                 : Preference::Both;
        break;
      }
    }
    agents.push_back(std::move(agent));
  }

  return Instance(std::move(agents), std::move(alternatives));
}

std::vector<Instance> InstanceGenerator::take(std::size_t count) {
  std::vector<Instance> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(next());
  return out;
}

}  // namespace flg
