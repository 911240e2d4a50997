#include "flg/json_io.hpp"

#include <stdexcept>

#include "json.hpp"

namespace flg {

namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& field, const std::string& why) {
  throw std::invalid_argument("instance JSON: " + field + ": " + why);
}

Rational parse_rational_field(const json& value, const std::string& field) {
  if (!value.is_string()) field_error(field, "expected a rational as a string");
  try {
    return Rational::parse(value.get<std::string>());
  } catch (const std::invalid_argument& e) {
    field_error(field, e.what());
  }
}

std::string dump(const json& j, int indent) {
  return indent >= 0 ? j.dump(indent) : j.dump();
}

json instance_to_json(const Instance& inst) {
  json agents = json::array();
  for (const Agent& a : inst.agents()) {
    agents.push_back({{"x", a.location.str()}, {"pref", std::string(to_string(a.pref))}});
  }
  json alternatives = json::array();
  for (const Rational& a : inst.alternatives()) alternatives.push_back(a.str());
  return json{{"agents", std::move(agents)}, {"alternatives", std::move(alternatives)}};
}

json witness_to_json(const DeviationWitness& w) {
  json agents = json::array();
  for (std::size_t i : w.agents) agents.push_back(i);
  json misreports = json::array();
  for (const auto& [agent, report] : w.misreports) {
    misreports.push_back({{"agent", agent}, {"report", report.str()}});
  }
  json costs = json::array();
  for (std::size_t k = 0; k < w.agents.size(); ++k) {
    costs.push_back({{"agent", w.agents[k]},
                     {"before", w.costs_before_after[k].first.str()},
                     {"after", w.costs_before_after[k].second.str()}});
  }
  return json{{"agents", std::move(agents)},
              {"instance", instance_to_json(w.true_profile)},
              {"misreports", std::move(misreports)},
              {"costs", std::move(costs)}};
}

json meta_to_json(const ReportMeta& meta) {
  return json{{"command", meta.command},
              {"corpus", meta.corpus},
              {"seed", meta.seed},
              {"size", meta.size}};
}

}  // namespace

Instance instance_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("instance JSON: not valid JSON: ") + e.what());
  }
  if (!j.is_object()) field_error("$", "expected an object");
  if (!j.contains("agents")) field_error("agents", "missing");
  if (!j["agents"].is_array()) field_error("agents", "expected an array");
  if (j["agents"].empty()) field_error("agents", "need at least one agent");
  if (!j.contains("alternatives")) field_error("alternatives", "missing");
  if (!j["alternatives"].is_array()) field_error("alternatives", "expected an array");
  if (j["alternatives"].size() < 2) {
    field_error("alternatives", "need at least two alternatives");
  }

  std::vector<Agent> agents;
  agents.reserve(j["agents"].size());
  for (std::size_t i = 0; i < j["agents"].size(); ++i) {
    const json& entry = j["agents"][i];
    const std::string where = "agents[" + std::to_string(i) + "]";
    if (!entry.is_object()) field_error(where, "expected an object");
    if (!entry.contains("x")) field_error(where + ".x", "missing");
    if (!entry.contains("pref")) field_error(where + ".pref", "missing");
    Agent agent;
    agent.location = parse_rational_field(entry["x"], where + ".x");
    if (!entry["pref"].is_string()) field_error(where + ".pref", "expected a string");
    try {
      agent.pref = preference_from_string(entry["pref"].get<std::string>());
    } catch (const std::invalid_argument& e) {
      field_error(where + ".pref", e.what());
    }
    agents.push_back(std::move(agent));
  }

  std::vector<Rational> alternatives;
  alternatives.reserve(j["alternatives"].size());
  for (std::size_t k = 0; k < j["alternatives"].size(); ++k) {
    alternatives.push_back(parse_rational_field(
        j["alternatives"][k], "alternatives[" + std::to_string(k) + "]"));
  }

  return Instance(std::move(agents), std::move(alternatives));
}

std::string instance_to_json_text(const Instance& inst, int indent) {
  return dump(instance_to_json(inst), indent);
}

std::string witness_to_json_text(const DeviationWitness& w, int indent) {
  return dump(witness_to_json(w), indent);
}

std::string ratio_report_to_json_text(const RatioReport& r, const ReportMeta& meta,
                                      int indent) {
  json j{{"mechanism", r.mechanism.str()},
         {"objective", std::string(to_string(r.objective))},
         {"bound", r.bound_desc},
         {"instances", r.instances},
         {"max_ratio", r.max_ratio.str()},
         {"argmax_instance",
          r.argmax_instance ? instance_to_json(*r.argmax_instance) : json()},
         {"argmax_index", r.argmax_index ? json(*r.argmax_index) : json()},
         {"violations", r.violations},
         {"unbounded", r.unbounded},
         {"verdict", r.pass ? "pass" : "fail"},
         {"meta", meta_to_json(meta)}};
  if (r.rule == RatioBoundRule::SumOptionalRule) {
    j["over_2n_plus_1"] = r.over_linear_bound;
  }
  return dump(j, indent);
}

std::string sp_report_to_json_text(const SpCorpusReport& r, const ReportMeta& meta,
                                   int indent) {
  json j{{"mechanism", r.mechanism.str()},
         {"mode", r.scope},
         {"instances", r.instances},
         {"witnesses", r.witnesses},
         {"deviations_tried", r.deviations_tried},
         {"first_witness_index",
          r.first_witness_index ? json(*r.first_witness_index) : json()},
         {"first_witness", r.first_witness ? witness_to_json(*r.first_witness) : json()},
         {"verdict", r.pass() ? "pass" : "violated"},
         {"meta", meta_to_json(meta)}};
  if (r.max_coalition > 0) j["max_coalition"] = r.max_coalition;
  return dump(j, indent);
}

std::string search_result_to_json_text(const SearchResult& r, const MechanismId& mech,
                                       Objective o, const ReportMeta& meta, int indent) {
  json j{{"mechanism", mech.str()},
         {"objective", std::string(to_string(o))},
         {"best_ratio", r.best_ratio.str()},
         {"best_instance", r.best_instance ? instance_to_json(*r.best_instance) : json()},
         {"evaluated", r.evaluated},
         {"meta", meta_to_json(meta)}};
  return dump(j, indent);
}

}  // namespace flg
