#pragma once

#include <cstdint>
#include <string>

#include "flg/audit.hpp"
#include "flg/model.hpp"

namespace flg {

/// Parses the instance schema
///   {"agents": [{"x": "<rational>", "pref": "f1"|"f2"|"both"}, ...],
///    "alternatives": ["<rational>", ...]}
/// where <rational> is "p/q", an integer, or a decimal string (converted
/// exactly). Throws std::invalid_argument with a message naming the offending
/// field.
Instance instance_from_json_text(const std::string& text);

/// Canonical serialization: alternatives sorted ascending, every rational in
/// lowest terms. indent < 0 yields the compact single-line form.
std::string instance_to_json_text(const Instance& inst, int indent = -1);

/// Provenance attached to report files so any run can be replayed.
struct ReportMeta {
  std::string command;  // "audit-ratio", "audit-sp", "audit-gsp", "search"
  std::string corpus;   // corpus kind, "fixtures", or a file reference
  std::uint64_t seed = 0;
  std::size_t size = 0;
};

std::string witness_to_json_text(const DeviationWitness& w, int indent = -1);
std::string ratio_report_to_json_text(const RatioReport& r, const ReportMeta& meta,
                                      int indent = -1);
std::string sp_report_to_json_text(const SpCorpusReport& r, const ReportMeta& meta,
                                   int indent = -1);
std::string search_result_to_json_text(const SearchResult& r, const MechanismId& mech,
                                       Objective o, const ReportMeta& meta,
                                       int indent = -1);

}  // namespace flg
