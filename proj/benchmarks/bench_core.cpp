#include <benchmark/benchmark.h>

#include "flg/audit.hpp"

using namespace flg;

namespace {

std::vector<Instance> corpus(CorpusKind kind, int n_max, int m_max, std::size_t count) {
  GeneratorConfig cfg;
  cfg.seed = 7;
  cfg.kind = kind;
  cfg.n_max = n_max;
  cfg.m_max = m_max;
  return InstanceGenerator(cfg).take(count);
}

void BM_BruteForceOracle(benchmark::State& state) {
  const auto instances =
      corpus(CorpusKind::Compulsory, 6, static_cast<int>(state.range(0)), 64);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        brute_force_opt(instances[i++ % instances.size()], Objective::SumCost));
  }
}
BENCHMARK(BM_BruteForceOracle)->Arg(4)->Arg(6)->Arg(10);

void BM_MedianZoneMechanism(benchmark::State& state) {
  const auto instances = corpus(CorpusKind::Compulsory, 6, 6, 64);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mechanism_1(instances[i++ % instances.size()]));
  }
}
BENCHMARK(BM_MedianZoneMechanism);

void BM_OptionalMechanism(benchmark::State& state) {
  const auto instances = corpus(CorpusKind::Optional, 6, 6, 64);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mechanism_3(instances[i++ % instances.size()]));
  }
}
BENCHMARK(BM_OptionalMechanism);

void BM_SpAudit(benchmark::State& state) {
  const auto instances = corpus(CorpusKind::Optional, 6, 6, 32);
  const MechanismId mech = MechanismId::parse("m3");
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        audit_strategyproof(mech, instances[i++ % instances.size()]));
  }
}
BENCHMARK(BM_SpAudit);

void BM_GspAudit(benchmark::State& state) {
  const auto instances = corpus(CorpusKind::Compulsory, 3, 6, 16);
  const MechanismId mech = MechanismId::parse("m1");
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        audit_group_strategyproof(mech, instances[i++ % instances.size()], 3));
  }
}
BENCHMARK(BM_GspAudit);

}  // namespace

BENCHMARK_MAIN();
