#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "flg/generator.hpp"
#include "flg/json_io.hpp"
#include "test_support.hpp"

using namespace flg;
using flgtest::q;

TEST_CASE("parse the documented schema") {
  const std::string text = R"({
    "agents": [{"x": "1.03", "pref": "both"}, {"x": "-1/2", "pref": "f2"}],
    "alternatives": ["2", "-1", "0.5"]
  })";
  const Instance inst = instance_from_json_text(text);
  REQUIRE(inst.agent_count() == 2);
  CHECK(inst.agent(0).location == q("103/100"));  // decimal converted exactly
  CHECK(inst.agent(0).pref == Preference::Both);
  CHECK(inst.agent(1).location == q("-1/2"));
  CHECK(inst.agent(1).pref == Preference::F2Only);
  // alternatives come back sorted
  CHECK(inst.alternatives() == std::vector{q("-1"), q("1/2"), q("2")});
}

TEST_CASE("serialization is canonical") {
  const Instance inst({{q("2/4"), Preference::F1Only}}, {q("3"), q("-2/4")});
  const std::string text = instance_to_json_text(inst);
  CHECK(text ==
        R"({"agents":[{"pref":"f1","x":"1/2"}],"alternatives":["-1/2","3"]})");
  CHECK(instance_to_json_text(inst) == text);  // byte-stable
  CHECK(instance_from_json_text(text) == inst);
}

TEST_CASE("round trip over fuzzed instances") {
  GeneratorConfig cfg;
  cfg.seed = 2024;
  cfg.kind = CorpusKind::Optional;
  InstanceGenerator gen(cfg);
  for (int iter = 0; iter < 250; ++iter) {
    const Instance inst = gen.next();
    CHECK(instance_from_json_text(instance_to_json_text(inst)) == inst);
    CHECK(instance_from_json_text(instance_to_json_text(inst, 2)) == inst);
  }
}

TEST_CASE("malformed input names the offending field") {
  const auto error_of = [](const std::string& text) {
    try {
      (void)instance_from_json_text(text);
    } catch (const std::invalid_argument& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };

  CHECK(error_of("{") .find("not valid JSON") != std::string::npos);
  CHECK(error_of("[]").find("expected an object") != std::string::npos);
  CHECK(error_of(R"({"alternatives": ["0", "1"]})").find("agents") !=
        std::string::npos);
  CHECK(error_of(R"({"agents": [], "alternatives": ["0", "1"]})")
            .find("at least one agent") != std::string::npos);
  CHECK(error_of(R"({"agents": [{"x": "0", "pref": "both"}]})")
            .find("alternatives") != std::string::npos);
  CHECK(error_of(R"({"agents": [{"x": "0", "pref": "both"}], "alternatives": ["0"]})")
            .find("at least two") != std::string::npos);
  CHECK(error_of(
            R"({"agents": [{"x": "0", "pref": "both"}, {"x": "oops", "pref": "f1"}],
                "alternatives": ["0", "1"]})")
            .find("agents[1].x") != std::string::npos);
  CHECK(error_of(
            R"({"agents": [{"x": "0", "pref": "somewhere"}], "alternatives": ["0", "1"]})")
            .find("agents[0].pref") != std::string::npos);
  CHECK(error_of(
            R"({"agents": [{"x": "0", "pref": "both"}], "alternatives": ["0", true]})")
            .find("alternatives[1]") != std::string::npos);
  CHECK(error_of(R"({"agents": [{"pref": "both"}], "alternatives": ["0", "1"]})")
            .find("agents[0].x") != std::string::npos);
}

TEST_CASE("report serialization carries exact rationals and provenance") {
  GeneratorConfig cfg;
  cfg.seed = 55;
  cfg.kind = CorpusKind::Compulsory;
  const auto corpus = InstanceGenerator(cfg).take(40);
  const RatioReport report =
      audit_ratio(MechanismId::parse("m1"), Objective::SumCost, corpus, Rational(3), 2);
  const ReportMeta meta{"audit-ratio", "compulsory", cfg.seed, corpus.size()};

  const std::string text = ratio_report_to_json_text(report, meta);
  CHECK(text.find("\"mechanism\":\"m1\"") != std::string::npos);
  CHECK(text.find("\"objective\":\"sum\"") != std::string::npos);
  CHECK(text.find("\"bound\":\"3\"") != std::string::npos);
  CHECK(text.find("\"max_ratio\":\"" + report.max_ratio.str() + "\"") !=
        std::string::npos);
  CHECK(text.find("\"seed\":55") != std::string::npos);
  CHECK(text.find("\"verdict\":\"pass\"") != std::string::npos);
  CHECK(ratio_report_to_json_text(report, meta) == text);  // byte-stable

  const SpResult sp = audit_strategyproof(
      MechanismId::parse("opt-sc"),
      flgtest::compulsory({"0", "2"}, {"-51/50", "-1", "103/100"}));
  REQUIRE(sp.witness.has_value());
  const std::string witness = witness_to_json_text(*sp.witness);
  CHECK(witness.find("\"report\":\"-1\"") != std::string::npos);
  CHECK(witness.find("\"before\":\"103/100\"") != std::string::npos);
  CHECK(witness.find("\"after\":\"51/50\"") != std::string::npos);
}
