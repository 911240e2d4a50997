#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "flg/generator.hpp"
#include "flg/oracle.hpp"
#include "test_support.hpp"

using namespace flg;
using flgtest::compulsory;
using flgtest::q;

TEST_CASE("objective parsing") {
  CHECK(objective_from_string("sum") == Objective::SumCost);
  CHECK(objective_from_string("max") == Objective::MaxCost);
  CHECK(to_string(Objective::SumCost) == "sum");
  CHECK_THROWS_AS(objective_from_string("avg"), std::invalid_argument);
}

TEST_CASE("brute force: sum-cost counterexample geometry") {
  const Instance inst = compulsory({"0", "2"}, {"-51/50", "-1", "103/100"});
  const OptResult r = brute_force_opt(inst, Objective::SumCost);
  CHECK(inst.alternative(r.placement.slot1) == q("-1"));
  CHECK(inst.alternative(r.placement.slot2) == q("103/100"));
  CHECK(r.value == q("403/100"));
  CHECK(r.all_optima == std::vector<Placement>{{1, 2}, {2, 1}});
}

TEST_CASE("brute force: max-cost counterexample geometry") {
  const Instance inst = compulsory({"-1/100", "1/100"}, {"-1", "1", "101/100"});
  const OptResult r = brute_force_opt(inst, Objective::MaxCost);
  CHECK(inst.alternative(r.placement.slot1) == q("-1"));
  CHECK(inst.alternative(r.placement.slot2) == q("1"));
  CHECK(r.value == q("101/100"));
  CHECK(r.all_optima == std::vector<Placement>{{0, 1}, {1, 0}});
}

TEST_CASE("brute force: colocated agent on duplicated slot") {
  const Instance inst = compulsory({"7/3"}, {"7/3", "7/3"});
  CHECK(brute_force_opt(inst, Objective::SumCost).value == q("0"));
  CHECK(brute_force_opt(inst, Objective::MaxCost).value == q("0"));
}

TEST_CASE("adjacent-pair sum optimum") {
  const Instance inst = compulsory({"0", "2"}, {"-51/50", "-1", "103/100"});
  const OptResult r = opt_sum_in_ap(inst);
  CHECK(r.placement == Placement{1, 2});
  CHECK(r.value == q("403/100"));

  const Instance two = compulsory({"5", "-3"}, {"-1", "4"});
  CHECK(opt_sum_in_ap(two).placement == Placement{0, 1});

  const Instance optional_inst({{q("0"), Preference::F1Only}}, {q("0"), q("1")});
  CHECK_THROWS_WITH_AS(opt_sum_in_ap(optional_inst), "compulsory setting required",
                       std::invalid_argument);
}

TEST_CASE("center-peak max optimum") {
  const Instance inst = compulsory({"-1/100", "1/100"}, {"-1", "1", "101/100"});
  const OptResult r = opt_max_center_peak(inst);
  CHECK(r.placement == Placement{0, 1});
  CHECK(r.value == q("101/100"));

  // symmetric profile and grid: the straddling pair wins
  const Instance sym = compulsory({"-3/2", "3/2"}, {"-2", "-1", "1", "2"});
  CHECK(opt_max_center_peak(sym).placement == Placement{1, 2});

  const Instance optional_inst({{q("0"), Preference::F2Only}}, {q("0"), q("1")});
  CHECK_THROWS_AS(opt_max_center_peak(optional_inst), std::invalid_argument);
}

TEST_CASE("structured optima equal brute force on fuzzed profiles") {
  GeneratorConfig cfg;
  cfg.seed = 1331;
  cfg.kind = CorpusKind::Compulsory;
  InstanceGenerator gen(cfg);
  for (int iter = 0; iter < 400; ++iter) {
    const Instance inst = gen.next();
    CHECK(opt_sum_in_ap(inst).value == brute_force_opt(inst, Objective::SumCost).value);
    CHECK(opt_max_center_peak(inst).value ==
          brute_force_opt(inst, Objective::MaxCost).value);
  }
}

TEST_CASE("oracle invariants") {
  GeneratorConfig cfg;
  cfg.seed = 7771;
  cfg.kind = CorpusKind::Optional;
  InstanceGenerator gen(cfg);
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 200; ++iter) {
    const Instance inst = gen.next();
    for (const Objective o : {Objective::SumCost, Objective::MaxCost}) {
      const OptResult r = brute_force_opt(inst, o);

      CHECK_FALSE(r.all_optima.empty());
      for (const Placement& p : r.all_optima) {
        CHECK(placement_cost(p, inst, o) == r.value);
      }
      CHECK(r.placement == *std::min_element(
                               r.all_optima.begin(), r.all_optima.end(),
                               [](const Placement& a, const Placement& b) {
                                 return a.slot1 != b.slot1 ? a.slot1 < b.slot1
                                                           : a.slot2 < b.slot2;
                               }));

      // permuting agents leaves the optimal value unchanged
      std::vector<Agent> shuffled = inst.agents();
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      const Instance permuted(std::move(shuffled), inst.alternatives());
      CHECK(brute_force_opt(permuted, o).value == r.value);

      // translating every coordinate leaves the optimal value unchanged
      const Instance shifted = flgtest::translated(inst, q("13/7"));
      CHECK(brute_force_opt(shifted, o).value == r.value);
    }
  }
}
