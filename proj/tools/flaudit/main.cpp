// flaudit: generate instances, run mechanisms, audit strategyproofness and
// approximation ratios against the exact brute-force oracle, and replay the
// built-in reference fixtures.
//
// Exit codes: 0 all checks pass, 1 an audited property was violated (witness
// or bound breach reported), 2 usage or input error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "flg/audit.hpp"
#include "flg/json_io.hpp"

namespace fs = std::filesystem;
using namespace flg;

namespace {

std::string approx_str(const Rational& r) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", r.approx());
  return buf;
}

// Exact value first, decimal annotation for the human eye.
std::string human(const Rational& r) { return r.str() + " (~" + approx_str(r) + ")"; }

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::invalid_argument("cannot write \"" + path + "\"");
    out << content;
  }
  fs::rename(tmp, target);
}

void emit(const std::optional<std::string>& out_path, const std::string& content) {
  if (out_path) {
    write_file_atomic(*out_path, content);
  } else {
    std::cout << content << "\n";
  }
}

CorpusKind corpus_kind_for(const MechanismId& mech) {
  switch (mech.kind) {
    case MechKind::M1:
    case MechKind::M2:
    case MechKind::OrderStat:
      return CorpusKind::Compulsory;
    case MechKind::SC:
    case MechKind::MC:
      return CorpusKind::SingleFacility;
    default:
      return CorpusKind::Optional;
  }
}

Objective default_objective(const MechanismId& mech) {
  switch (mech.kind) {
    case MechKind::M1:
    case MechKind::M3:
    case MechKind::SC:
    case MechKind::OptSum:
      return Objective::SumCost;
    case MechKind::M2:
    case MechKind::M4:
    case MechKind::MC:
    case MechKind::OptMax:
      return Objective::MaxCost;
    case MechKind::OrderStat:
      throw std::invalid_argument("orderstat has no default objective; pass --objective");
  }
  throw std::logic_error("unreachable");
}

std::optional<Rational> default_bound(const MechanismId& mech, Objective o) {
  switch (mech.kind) {
    case MechKind::M1: return o == Objective::SumCost ? std::optional(Rational(3)) : std::nullopt;
    case MechKind::M2: return o == Objective::MaxCost ? std::optional(Rational(3)) : std::nullopt;
    case MechKind::M4: return o == Objective::MaxCost ? std::optional(Rational(9)) : std::nullopt;
    case MechKind::SC: return o == Objective::SumCost ? std::optional(Rational(3)) : std::nullopt;
    case MechKind::MC: return o == Objective::MaxCost ? std::optional(Rational(3)) : std::nullopt;
    case MechKind::OptSum:
    case MechKind::OptMax:
      return Rational(1);
    default:
      return std::nullopt;  // m3 uses the max(2n+1,15) rule; orderstat has no bound
  }
}

struct CorpusOptions {
  std::size_t size = 1000;
  std::uint64_t seed = 0;
  int n_min = 1, n_max = 6;
  int m_min = 2, m_max = 6;
};

GeneratorConfig generator_config(const CorpusOptions& opt, CorpusKind kind) {
  GeneratorConfig cfg;
  cfg.seed = opt.seed;
  cfg.n_min = opt.n_min;
  cfg.n_max = opt.n_max;
  cfg.m_min = opt.m_min;
  cfg.m_max = opt.m_max;
  cfg.kind = kind;
  return cfg;
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
  CorpusOptions corpus;
  std::string prefs = "optional";
  bool no_duplicates = false;
  std::string out = "-";
};

int cmd_gen(const GenArgs& args) {
  GeneratorConfig cfg = generator_config(args.corpus, corpus_kind_from_string(args.prefs));
  cfg.inject_duplicates = !args.no_duplicates;
  cfg.seed = args.corpus.seed;
  InstanceGenerator gen(cfg);

  const bool jsonl = args.out == "-" || args.out.ends_with(".jsonl");
  if (jsonl) {
    std::string lines;
    for (std::size_t i = 0; i < args.corpus.size; ++i) {
      lines += instance_to_json_text(gen.next());
      lines += "\n";
    }
    if (args.out == "-") {
      std::cout << lines;
    } else {
      write_file_atomic(args.out, lines);
    }
  } else {
    fs::create_directories(args.out);
    for (std::size_t i = 0; i < args.corpus.size; ++i) {
      char name[32];
      std::snprintf(name, sizeof(name), "instance_%05zu.json", i);
      write_file_atomic((fs::path(args.out) / name).string(),
                        instance_to_json_text(gen.next(), 2) + "\n");
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// run

struct RunArgs {
  std::string mech;
  std::string file = "-";
  bool json = false;
};

int cmd_run(const RunArgs& args) {
  const MechanismId mech = MechanismId::parse(args.mech);
  const Instance inst = instance_from_json_text(read_input(args.file));
  const Placement placement = run_mechanism(mech, inst);
  const Rational y1 = inst.alternative(placement.slot1);
  const Rational y2 = inst.alternative(placement.slot2);
  const Rational total = sum_cost(placement, inst);
  const Rational worst = max_cost(placement, inst);

  if (args.json) {
    std::ostringstream out;
    out << "{\"mechanism\":\"" << mech.str() << "\",\"slot1\":" << placement.slot1
        << ",\"slot2\":" << placement.slot2 << ",\"y1\":\"" << y1.str() << "\",\"y2\":\""
        << y2.str() << "\",\"agent_costs\":[";
    for (std::size_t i = 0; i < inst.agent_count(); ++i) {
      if (i) out << ",";
      out << "\"" << agent_cost(placement, inst.agent(i), inst).str() << "\"";
    }
    out << "],\"sum_cost\":\"" << total.str() << "\",\"max_cost\":\"" << worst.str()
        << "\"}";
    std::cout << out.str() << "\n";
    return 0;
  }

  std::cout << "mechanism: " << mech.str() << "\n";
  std::cout << "instance: n=" << inst.agent_count() << " m=" << inst.alternative_count()
            << "\n";
  std::cout << "placement: slot1=" << placement.slot1 << " slot2=" << placement.slot2
            << " y1=" << human(y1) << " y2=" << human(y2) << "\n";
  for (std::size_t i = 0; i < inst.agent_count(); ++i) {
    const Agent& a = inst.agent(i);
    std::cout << "agent[" << i << "]: x=" << a.location.str() << " pref="
              << to_string(a.pref)
              << " cost=" << human(agent_cost(placement, a, inst)) << "\n";
  }
  std::cout << "sum_cost: " << human(total) << "\n";
  std::cout << "max_cost: " << human(worst) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// audit

struct AuditArgs {
  std::vector<std::string> mechs;
  std::string objective;  // empty -> per-mechanism default
  std::string bound;      // empty -> per-mechanism default / rule
  CorpusOptions corpus;
  std::string corpus_file;  // JSONL file overriding the generated corpus
  bool sp = false;
  bool gsp = false;
  bool fixtures = false;
  std::size_t coalition = 0;  // 0 -> up to instance size
  unsigned threads = 0;       // 0 -> hardware
  std::optional<std::string> out;
  std::optional<std::string> csv;
};

std::vector<Instance> corpus_from_jsonl(const std::string& path) {
  std::istringstream lines(read_input(path));
  std::vector<Instance> corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      corpus.push_back(instance_from_json_text(line));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": " +
                                  e.what());
    }
  }
  if (corpus.empty()) throw std::invalid_argument(path + ": no instances");
  return corpus;
}

std::vector<Instance> fixture_corpus() {
  std::vector<Instance> corpus;
  for (const ReferenceFixture& f : reference_fixtures()) corpus.push_back(f.instance);
  return corpus;
}

int cmd_audit(const AuditArgs& args) {
  const unsigned threads =
      args.threads ? args.threads : std::max(1u, std::thread::hardware_concurrency());
  constexpr std::size_t kGspCap = 4;
  if (args.gsp && !args.fixtures && args.corpus_file.empty() &&
      args.corpus.n_max > static_cast<int>(kGspCap)) {
    throw std::invalid_argument("--gsp needs --nmax <= " + std::to_string(kGspCap) +
                                " (exhaustive coalition search)");
  }

  std::vector<std::string> json_reports;
  std::string csv = "mechanism,mode,objective,corpus,instances,seed,bound,max_ratio,"
                    "witnesses,verdict\n";
  bool violated = false;

  for (const std::string& mech_text : args.mechs) {
    const MechanismId mech = MechanismId::parse(mech_text);
    const CorpusKind kind = corpus_kind_for(mech);

    std::vector<Instance> corpus;
    std::string corpus_desc;
    if (args.fixtures) {
      corpus = fixture_corpus();
      corpus_desc = "fixtures";
    } else if (!args.corpus_file.empty()) {
      corpus = corpus_from_jsonl(args.corpus_file);
      corpus_desc = "file:" + args.corpus_file;
    } else {
      corpus = InstanceGenerator(generator_config(args.corpus, kind))
                   .take(args.corpus.size);
      corpus_desc = std::string(to_string(kind));
    }

    ReportMeta meta{.command = args.sp    ? "audit-sp"
                               : args.gsp ? "audit-gsp"
                                          : "audit-ratio",
                    .corpus = corpus_desc,
                    .seed = args.corpus.seed,
                    .size = corpus.size()};

    if (args.sp || args.gsp) {
      SpCorpusReport report;
      if (args.sp) {
        report = audit_sp_corpus(mech, corpus, threads);
      } else {
        const std::size_t coalition =
            args.coalition ? args.coalition : static_cast<std::size_t>(args.corpus.n_max);
        report = audit_gsp_corpus(mech, corpus, coalition, threads);
      }
      violated = violated || !report.pass();
      json_reports.push_back(sp_report_to_json_text(report, meta, 2));
      csv += mech.str() + "," + report.scope + ",-," + corpus_desc + "," +
             std::to_string(report.instances) + "," + std::to_string(meta.seed) +
             ",-,-," + std::to_string(report.witnesses) + "," +
             (report.pass() ? "pass" : "violated") + "\n";
      continue;
    }

    const Objective objective = args.objective.empty()
                                    ? default_objective(mech)
                                    : objective_from_string(args.objective);
    RatioReport report;
    if (!args.bound.empty()) {
      report = audit_ratio(mech, objective, corpus, Rational::parse(args.bound), threads);
    } else if (mech.kind == MechKind::M3 && objective == Objective::SumCost) {
      report = audit_ratio_sum_optional_rule(corpus, threads);
    } else {
      const auto bound = default_bound(mech, objective);
      if (!bound) {
        throw std::invalid_argument("no default bound for " + mech.str() + "/" +
                                    std::string(to_string(objective)) +
                                    "; pass --bound");
      }
      report = audit_ratio(mech, objective, corpus, *bound, threads);
    }
    violated = violated || !report.pass;
    json_reports.push_back(ratio_report_to_json_text(report, meta, 2));
    csv += mech.str() + ",ratio," + std::string(to_string(objective)) + "," +
           corpus_desc + "," + std::to_string(report.instances) + "," +
           std::to_string(meta.seed) + "," + report.bound_desc + "," +
           report.max_ratio.str() + ",-," + (report.pass ? "pass" : "fail") + "\n";
  }

  std::string payload;
  if (json_reports.size() == 1) {
    payload = json_reports.front();
  } else {
    payload = "[\n";
    for (std::size_t i = 0; i < json_reports.size(); ++i) {
      payload += json_reports[i];
      if (i + 1 < json_reports.size()) payload += ",";
      payload += "\n";
    }
    payload += "]";
  }
  emit(args.out, payload);
  if (args.csv) write_file_atomic(*args.csv, csv);
  return violated ? 1 : 0;
}

// ---------------------------------------------------------------------------
// repro

int cmd_repro() {
  bool all_ok = true;
  const auto check = [&](bool ok) {
    all_ok = all_ok && ok;
    return ok ? "ok" : "MISMATCH";
  };

  for (const ReferenceFixture& fixture : reference_fixtures()) {
    std::cout << "fixture " << fixture.name << " (" << to_string(fixture.objective)
              << " cost)\n";
    const OptResult opt = brute_force_opt(fixture.instance, fixture.objective);
    const Rational got_y1 = fixture.instance.alternative(opt.placement.slot1);
    const Rational got_y2 = fixture.instance.alternative(opt.placement.slot2);
    std::cout << "  optimum placement: claimed (" << fixture.expected_opt_coords.first
              << ", " << fixture.expected_opt_coords.second << ")  computed (" << got_y1
              << ", " << got_y2 << ")  "
              << check(got_y1 == fixture.expected_opt_coords.first &&
                       got_y2 == fixture.expected_opt_coords.second)
              << "\n";
    std::cout << "  optimum value: claimed " << fixture.expected_opt_value
              << "  computed " << opt.value << "  "
              << check(opt.value == fixture.expected_opt_value) << "\n";

    for (const auto& cc : fixture.cost_checks) {
      // Evaluate the stated facility coordinates on this instance's slots.
      const auto& alts = fixture.instance.alternatives();
      std::size_t s1 = alts.size(), s2 = alts.size();
      for (std::size_t k = 0; k < alts.size(); ++k) {
        if (s1 == alts.size() && alts[k] == cc.coords.first) s1 = k;
      }
      for (std::size_t k = 0; k < alts.size(); ++k) {
        if (k != s1 && alts[k] == cc.coords.second) {
          s2 = k;
          break;
        }
      }
      const Rational got =
          agent_cost(Placement{s1, s2}, cc.location, cc.pref, fixture.instance);
      std::cout << "  cost at (" << cc.coords.first << ", " << cc.coords.second
                << ") for x=" << cc.location << ": claimed " << cc.expected
                << "  computed " << got << "  " << check(got == cc.expected) << "\n";
    }

    if (fixture.deviation) {
      const auto& dev = *fixture.deviation;
      const MechanismId opt_mech{fixture.objective == Objective::SumCost
                                     ? MechKind::OptSum
                                     : MechKind::OptMax};
      const Placement honest = run_mechanism(opt_mech, fixture.instance);
      const Rational before =
          agent_cost(honest, fixture.instance.agent(dev.agent), fixture.instance);

      std::vector<Agent> agents = fixture.instance.agents();
      agents[dev.agent].location = dev.report;
      const Instance deviated(std::move(agents), fixture.instance.alternatives());
      const Placement shifted = run_mechanism(opt_mech, deviated);
      const Rational after = agent_cost(shifted, fixture.instance.agent(dev.agent),
                                        fixture.instance);

      std::cout << "  deviation: agent " << dev.agent << " reports " << dev.report
                << "  cost claimed " << dev.cost_before << " -> " << dev.cost_after
                << "  computed " << before << " -> " << after << "  "
                << check(before == dev.cost_before && after == dev.cost_after) << "\n";

      const SpResult sp = audit_strategyproof(opt_mech, fixture.instance);
      std::cout << "  deviation search: witness "
                << (sp.witness ? "found" : "not found") << "  "
                << check(sp.witness.has_value()) << "\n";
    }
  }

  std::cout << (all_ok ? "all fixtures reproduced" : "fixture mismatch detected")
            << "\n";
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mechanisms, exact oracles and strategyproofness audits for "
               "constrained two-facility location games on a line"};
  app.require_subcommand(1);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "generate a deterministic instance corpus");
  gen->add_option("--size", gen_args.corpus.size, "number of instances");
  gen->add_option("--seed", gen_args.corpus.seed, "generator seed");
  gen->add_option("--nmin", gen_args.corpus.n_min, "minimum agent count");
  gen->add_option("--nmax", gen_args.corpus.n_max, "maximum agent count");
  gen->add_option("--mmin", gen_args.corpus.m_min, "minimum alternative count");
  gen->add_option("--mmax", gen_args.corpus.m_max, "maximum alternative count");
  gen->add_option("--prefs", gen_args.prefs,
                  "preference profile: both | optional | f1");
  gen->add_flag("--no-duplicates", gen_args.no_duplicates,
                "disable duplicate alternative injection");
  gen->add_option("--out", gen_args.out,
                  "output: '-' for JSONL on stdout, *.jsonl file, or a directory");

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "run one mechanism on one instance");
  run->add_option("--mech", run_args.mech, "mechanism id")->required();
  run->add_flag("--json", run_args.json, "machine-readable output");
  run->add_option("file", run_args.file, "instance JSON file ('-' for stdin)");

  AuditArgs audit_args;
  CLI::App* audit = app.add_subcommand(
      "audit", "audit ratio bounds or (group) strategyproofness over a corpus");
  audit->add_option("--mech", audit_args.mechs, "mechanism id (repeatable)")
      ->required();
  audit->add_option("--objective", audit_args.objective, "sum | max");
  audit->add_option("--bound", audit_args.bound, "ratio bound override (rational)");
  audit->add_option("--size", audit_args.corpus.size, "corpus size");
  audit->add_option("--seed", audit_args.corpus.seed, "corpus seed");
  audit->add_option("--nmin", audit_args.corpus.n_min, "minimum agent count");
  audit->add_option("--nmax", audit_args.corpus.n_max, "maximum agent count");
  audit->add_option("--mmin", audit_args.corpus.m_min, "minimum alternative count");
  audit->add_option("--mmax", audit_args.corpus.m_max, "maximum alternative count");
  auto* sp_flag = audit->add_flag("--sp", audit_args.sp, "unilateral deviation search");
  audit->add_flag("--gsp", audit_args.gsp, "exhaustive coalition search")
      ->excludes(sp_flag);
  audit->add_option("--coalition", audit_args.coalition,
                    "max coalition size (default: instance size)");
  audit->add_flag("--fixtures", audit_args.fixtures,
                  "audit the built-in reference fixtures instead of a fuzz corpus");
  audit->add_option("--corpus", audit_args.corpus_file,
                    "audit instances from a JSONL file instead of a fuzz corpus");
  audit->add_option("--threads", audit_args.threads, "worker threads (0 = hardware)");
  std::string out_path, csv_path;
  audit->add_option("--out", out_path, "write the JSON report here (atomic)");
  audit->add_option("--csv", csv_path, "write a CSV summary here (atomic)");

  CLI::App* repro = app.add_subcommand(
      "repro", "replay the reference fixtures and compare claimed vs computed values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_args);
    if (run->parsed()) return cmd_run(run_args);
    if (audit->parsed()) {
      if (!out_path.empty()) audit_args.out = out_path;
      if (!csv_path.empty()) audit_args.csv = csv_path;
      return cmd_audit(audit_args);
    }
    if (repro->parsed()) return cmd_repro();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
