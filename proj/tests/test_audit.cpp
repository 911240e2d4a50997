#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <stdexcept>

#include "doctest.h"
#include "flg/audit.hpp"
#include "test_support.hpp"

using namespace flg;
using flgtest::compulsory;
using flgtest::q;
using flgtest::with_prefs;

namespace {

std::vector<Rational> qvec(std::initializer_list<const char*> texts) {
  std::vector<Rational> out;
  for (const char* t : texts) out.push_back(q(t));
  return out;
}

Placement placement_for_coords(const Instance& inst, const Rational& y1,
                               const Rational& y2) {
  const auto& alts = inst.alternatives();
  std::size_t s1 = alts.size();
  for (std::size_t k = 0; k < alts.size(); ++k) {
    if (alts[k] == y1) {
      s1 = k;
      break;
    }
  }
  for (std::size_t k = 0; k < alts.size(); ++k) {
    if (k != s1 && alts[k] == y2) return Placement{s1, k};
  }
  REQUIRE(false);
  return Placement{};
}

}  // namespace

TEST_CASE("candidate misreports: plain grid") {
  const Instance inst = compulsory({"0", "2"}, {"0", "1", "2"});
  // selection breakpoints: border 1, midpoints 1/2 and 3/2; min gap 1/2, so
  // every breakpoint is nudged by 1/8; span widening adds -3 and 5
  const auto expected = qvec(
      {"-3", "0", "3/8", "5/8", "7/8", "1", "9/8", "11/8", "13/8", "2", "5"});
  CHECK(candidate_misreports(inst, 0) == expected);
  CHECK(candidate_misreports(inst, 1) == expected);  // peer at 0 already present
  CHECK_THROWS_AS(candidate_misreports(inst, 2), std::out_of_range);
}

TEST_CASE("candidate misreports: two alternatives") {
  const Instance inst = compulsory({"3"}, {"1", "5"});
  // single breakpoint (the midpoint 3), so the nudge defaults to 1
  CHECK(candidate_misreports(inst, 0) == qvec({"-4", "1", "2", "4", "5", "10"}));
}

TEST_CASE("candidate misreports: duplicated grid") {
  const Instance inst = compulsory({"-1/100", "1/100"}, {"-1", "-1", "1", "1"});
  // breakpoints {-1, 0, 1}, min gap 1 -> nudge 1/4
  CHECK(candidate_misreports(inst, 0) ==
        qvec({"-4", "-5/4", "-1", "-3/4", "-1/4", "1/100", "1/4", "3/4", "1",
              "5/4", "4"}));
}

TEST_CASE("uniform deviation grid") {
  const Instance inst = compulsory({"0"}, {"0", "2"});
  const auto grid = uniform_deviation_grid(inst, 5);
  REQUIRE(grid.size() == 5);
  CHECK(grid.front() == q("-3"));
  CHECK(grid.back() == q("5"));
  CHECK(grid[2] == q("1"));
  CHECK_THROWS_AS(uniform_deviation_grid(inst, 1), std::invalid_argument);
}

TEST_CASE("sum-cost optimum admits the fixture deviation, found nearest-first") {
  const Instance inst = compulsory({"0", "2"}, {"-51/50", "-1", "103/100"});
  const SpResult r = audit_strategyproof(MechanismId::parse("opt-sc"), inst);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->agents == std::vector<std::size_t>{0});
  CHECK(r.witness->misreports ==
        std::vector<std::pair<std::size_t, Rational>>{{0, q("-1")}});
  CHECK(r.witness->costs_before_after.at(0).first == q("103/100"));
  CHECK(r.witness->costs_before_after.at(0).second == q("51/50"));
}

TEST_CASE("max-cost optimum admits a deviation for the right agent") {
  const Instance inst = compulsory({"-1/100", "1/100"}, {"-1", "1", "101/100"});
  const SpResult r = audit_strategyproof(MechanismId::parse("opt-mc"), inst);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->agents == std::vector<std::size_t>{1});
  CHECK(r.witness->costs_before_after.at(0).first == q("101/100"));
  CHECK(r.witness->costs_before_after.at(0).second == q("1"));

  // the documented exaggeration to 2 also works, checked directly
  std::vector<Agent> agents = inst.agents();
  agents[1].location = q("2");
  const Instance deviated(std::move(agents), inst.alternatives());
  const Placement shifted = run_mechanism(MechanismId::parse("opt-mc"), deviated);
  CHECK(agent_cost(shifted, inst.agent(1), inst) == q("1"));
}

TEST_CASE("strategyproof mechanisms yield no witness on fuzz corpora") {
  const auto sp_clean = [](const char* mech, CorpusKind kind, std::uint64_t seed) {
    GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.kind = kind;
    const auto corpus = InstanceGenerator(cfg).take(150);
    const auto report = audit_sp_corpus(MechanismId::parse(mech), corpus, 2);
    CAPTURE(mech);
    CHECK(report.pass());
    CHECK(report.instances == 150);
  };
  sp_clean("m1", CorpusKind::Compulsory, 11);
  sp_clean("m2", CorpusKind::Compulsory, 12);
  sp_clean("m3", CorpusKind::Optional, 13);
  sp_clean("m4", CorpusKind::Optional, 14);
  sp_clean("sc", CorpusKind::SingleFacility, 15);
  sp_clean("mc", CorpusKind::SingleFacility, 16);

  GeneratorConfig cfg;
  cfg.seed = 17;
  cfg.kind = CorpusKind::Compulsory;
  const auto corpus = InstanceGenerator(cfg).take(100);
  CHECK(audit_sp_orderstat_family(corpus, 2).pass());
}

TEST_CASE("group audit: singleton coalitions reduce to the unilateral audit") {
  const Instance inst = compulsory({"0", "2"}, {"-51/50", "-1", "103/100"});
  const MechanismId mech = MechanismId::parse("opt-sc");
  const SpResult sp = audit_strategyproof(mech, inst);
  const SpResult gsp = audit_group_strategyproof(mech, inst, 1);
  REQUIRE(sp.witness.has_value());
  REQUIRE(gsp.witness.has_value());
  CHECK(gsp.witness->agents == sp.witness->agents);
  CHECK(gsp.witness->misreports == sp.witness->misreports);

  const Instance clean = compulsory({"1", "2"}, {"0", "3"});
  CHECK(audit_group_strategyproof(MechanismId::parse("m1"), clean, 1).strategyproof() ==
        audit_strategyproof(MechanismId::parse("m1"), clean).strategyproof());
}

TEST_CASE("group audit: no coalition beats the group-strategyproof mechanisms") {
  const auto gsp_clean = [](const char* mech, CorpusKind kind, std::uint64_t seed) {
    GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.kind = kind;
    cfg.n_max = 3;
    const auto corpus = InstanceGenerator(cfg).take(60);
    CAPTURE(mech);
    CHECK(audit_gsp_corpus(MechanismId::parse(mech), corpus, 3, 2).pass());
  };
  gsp_clean("m1", CorpusKind::Compulsory, 21);
  gsp_clean("m2", CorpusKind::Compulsory, 22);
  gsp_clean("m3", CorpusKind::Optional, 23);
  gsp_clean("m4", CorpusKind::Optional, 24);
  gsp_clean("sc", CorpusKind::SingleFacility, 26);
  gsp_clean("mc", CorpusKind::SingleFacility, 27);

  GeneratorConfig cfg;
  cfg.seed = 25;
  cfg.kind = CorpusKind::Compulsory;
  cfg.n_max = 3;
  const auto corpus = InstanceGenerator(cfg).take(40);
  CHECK(audit_gsp_orderstat_family(corpus, 3, 2).pass());
}

TEST_CASE("group audit: cap on exhaustive search") {
  const Instance big = compulsory({"1", "2", "3", "4", "5"}, {"0", "1"});
  CHECK_THROWS_WITH_AS(
      audit_group_strategyproof(MechanismId::parse("m1"), big, 2),
      "instance too large for exhaustive group audit", std::invalid_argument);
  CHECK(audit_group_strategyproof(MechanismId::parse("m1"), big, 2, 5).strategyproof());
}

TEST_CASE("exact ratio conventions") {
  CHECK(exact_ratio(q("0"), q("0")) == q("1"));
  CHECK_FALSE(exact_ratio(q("1/2"), q("0")).has_value());
  CHECK(exact_ratio(q("3"), q("2")) == q("3/2"));
}

TEST_CASE("ratio audit: median mechanism within 3 on sum cost") {
  GeneratorConfig cfg;
  cfg.seed = 303;
  cfg.kind = CorpusKind::Compulsory;
  const auto corpus = InstanceGenerator(cfg).take(300);
  const RatioReport r =
      audit_ratio(MechanismId::parse("m1"), Objective::SumCost, corpus, Rational(3), 2);
  CHECK(r.pass);
  CHECK(r.instances == 300);
  CHECK(r.max_ratio >= q("1"));
  CHECK(r.max_ratio <= q("3"));
  REQUIRE(r.argmax_instance.has_value());
  // the reported argmax really evaluates to the reported ratio
  const Placement p = run_mechanism(MechanismId::parse("m1"), *r.argmax_instance);
  const Rational mech_cost = placement_cost(p, *r.argmax_instance, Objective::SumCost);
  const Rational opt = brute_force_opt(*r.argmax_instance, Objective::SumCost).value;
  CHECK(mech_cost == r.max_ratio * opt);
}

TEST_CASE("ratio audit: single-agent corpora are solved optimally") {
  GeneratorConfig cfg;
  cfg.seed = 304;
  cfg.kind = CorpusKind::Compulsory;
  cfg.n_max = 1;
  const auto corpus = InstanceGenerator(cfg).take(120);
  for (const char* mech : {"m1", "m2"}) {
    const Objective o = mech[1] == '1' ? Objective::SumCost : Objective::MaxCost;
    const RatioReport r =
        audit_ratio(MechanismId::parse(mech), o, corpus, Rational(3), 2);
    CHECK(r.max_ratio == q("1"));
  }
}

TEST_CASE("ratio audit: single-facility subroutines stay within 3") {
  GeneratorConfig cfg;
  cfg.seed = 310;
  cfg.kind = CorpusKind::SingleFacility;
  const auto corpus = InstanceGenerator(cfg).take(300);
  const RatioReport sc =
      audit_ratio(MechanismId::parse("sc"), Objective::SumCost, corpus, Rational(3), 2);
  CHECK(sc.pass);
  CHECK(sc.max_ratio <= q("3"));
  const RatioReport mc =
      audit_ratio(MechanismId::parse("mc"), Objective::MaxCost, corpus, Rational(3), 2);
  CHECK(mc.pass);
  CHECK(mc.max_ratio <= q("3"));
}

TEST_CASE("ratio audit: per-instance rule for the optional median mechanism") {
  GeneratorConfig cfg;
  cfg.seed = 305;
  cfg.kind = CorpusKind::Optional;
  const auto corpus = InstanceGenerator(cfg).take(300);
  const RatioReport r = audit_ratio_sum_optional_rule(corpus, 2);
  CHECK(r.pass);
  CHECK(r.bound_desc == "max(2n+1,15)");
  CHECK(r.unbounded == 0);
}

TEST_CASE("ratio audit: mechanism cost never beats the oracle") {
  GeneratorConfig cfg;
  cfg.seed = 306;
  cfg.kind = CorpusKind::Optional;
  InstanceGenerator gen(cfg);
  for (int iter = 0; iter < 100; ++iter) {
    const Instance inst = gen.next();
    for (const char* mech : {"m3", "m4", "opt-sc", "opt-mc"}) {
      for (const Objective o : {Objective::SumCost, Objective::MaxCost}) {
        const Placement p = run_mechanism(MechanismId::parse(mech), inst);
        CHECK(placement_cost(p, inst, o) >= brute_force_opt(inst, o).value);
      }
    }
  }
}

TEST_CASE("parallel audits match the single-threaded result") {
  GeneratorConfig cfg;
  cfg.seed = 307;
  cfg.kind = CorpusKind::Compulsory;
  const auto corpus = InstanceGenerator(cfg).take(200);
  const RatioReport a =
      audit_ratio(MechanismId::parse("m1"), Objective::SumCost, corpus, Rational(3), 1);
  const RatioReport b =
      audit_ratio(MechanismId::parse("m1"), Objective::SumCost, corpus, Rational(3), 3);
  CHECK(a.max_ratio == b.max_ratio);
  CHECK(a.argmax_index == b.argmax_index);

  const auto sp1 = audit_sp_corpus(MechanismId::parse("m1"), corpus, 1);
  const auto sp3 = audit_sp_corpus(MechanismId::parse("m1"), corpus, 3);
  CHECK(sp1.witnesses == sp3.witnesses);
  CHECK(sp1.deviations_tried == sp3.deviations_tried);
  CHECK(sp1.first_witness_index == sp3.first_witness_index);
}

TEST_CASE("worst-case search reaches the near-tight geometries") {
  GeneratorConfig cfg;
  cfg.seed = 308;
  cfg.kind = CorpusKind::Compulsory;

  const SearchResult sum_search =
      worst_case_search(MechanismId::parse("m1"), Objective::SumCost, cfg, 200);
  REQUIRE(sum_search.best_instance.has_value());
  CHECK(sum_search.best_ratio >= q("29/10"));
  CHECK(sum_search.best_ratio <= q("3"));

  const SearchResult max_search =
      worst_case_search(MechanismId::parse("m2"), Objective::MaxCost, cfg, 200);
  REQUIRE(max_search.best_instance.has_value());
  CHECK(max_search.best_ratio >= q("29/10"));
  CHECK(max_search.best_ratio <= q("3"));

  // confirm the found instance from scratch
  const Instance& found = *max_search.best_instance;
  const Placement p = run_mechanism(MechanismId::parse("m2"), found);
  const Rational mech_cost = placement_cost(p, found, Objective::MaxCost);
  const Rational opt = brute_force_opt(found, Objective::MaxCost).value;
  CHECK(mech_cost == max_search.best_ratio * opt);
}

TEST_CASE("dense grid finds nothing the candidate grid misses") {
  struct Setup {
    const char* mech;
    CorpusKind kind;
  };
  const Setup setups[] = {
      {"m1", CorpusKind::Compulsory}, {"m2", CorpusKind::Compulsory},
      {"m3", CorpusKind::Optional},   {"m4", CorpusKind::Optional},
      {"sc", CorpusKind::SingleFacility}, {"mc", CorpusKind::SingleFacility},
  };
  for (const Setup& setup : setups) {
    GeneratorConfig cfg;
    cfg.seed = 309;
    cfg.kind = setup.kind;
    cfg.n_max = 3;
    cfg.m_max = 4;
    InstanceGenerator gen(cfg);
    const MechanismId mech = MechanismId::parse(setup.mech);
    for (int iter = 0; iter < 40; ++iter) {
      const Instance inst = gen.next();
      const std::size_t grid_points = 10 * candidate_misreports(inst, 0).size();
      const auto grid = uniform_deviation_grid(inst, grid_points);
      const SpResult dense = audit_strategyproof_with(mech, inst, grid);
      if (!dense.strategyproof()) {
        CHECK_FALSE(audit_strategyproof(mech, inst).strategyproof());
      }
      CAPTURE(setup.mech);
      CHECK(dense.strategyproof());
    }
  }

  // non-vacuous direction: where the optimum is manipulable, both searches see it
  const Instance fixture = compulsory({"0", "2"}, {"-51/50", "-1", "103/100"});
  const auto grid = uniform_deviation_grid(fixture, 200);
  CHECK_FALSE(
      audit_strategyproof_with(MechanismId::parse("opt-sc"), fixture, grid)
          .strategyproof());
  CHECK_FALSE(audit_strategyproof(MechanismId::parse("opt-sc"), fixture)
                  .strategyproof());
}

TEST_CASE("reference fixtures carry exact expected values") {
  const auto fixtures = reference_fixtures();
  REQUIRE(fixtures.size() == 4);
  CHECK(fixtures[0].name == "sc-opt-not-sp");
  CHECK(fixtures[1].name == "mc-opt-not-sp");
  CHECK(fixtures[2].name == "lb-sum-family");
  CHECK(fixtures[3].name == "lb-max-family");

  for (const ReferenceFixture& f : fixtures) {
    CAPTURE(f.name);
    const OptResult opt = brute_force_opt(f.instance, f.objective);
    CHECK(f.instance.alternative(opt.placement.slot1) == f.expected_opt_coords.first);
    CHECK(f.instance.alternative(opt.placement.slot2) == f.expected_opt_coords.second);
    CHECK(opt.value == f.expected_opt_value);

    for (const auto& cc : f.cost_checks) {
      const Placement p =
          placement_for_coords(f.instance, cc.coords.first, cc.coords.second);
      CHECK(agent_cost(p, cc.location, cc.pref, f.instance) == cc.expected);
    }

    if (f.deviation) {
      const MechanismId mech{f.objective == Objective::SumCost ? MechKind::OptSum
                                                               : MechKind::OptMax};
      const Placement honest = run_mechanism(mech, f.instance);
      CHECK(agent_cost(honest, f.instance.agent(f.deviation->agent), f.instance) ==
            f.deviation->cost_before);
      std::vector<Agent> agents = f.instance.agents();
      agents[f.deviation->agent].location = f.deviation->report;
      const Instance deviated(std::move(agents), f.instance.alternatives());
      const Placement shifted = run_mechanism(mech, deviated);
      CHECK(agent_cost(shifted, f.instance.agent(f.deviation->agent), f.instance) ==
            f.deviation->cost_after);
    }
  }
}
