#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flg/generator.hpp"
#include "flg/mechanisms.hpp"
#include "flg/oracle.hpp"

namespace flg {

/// A demonstrated manipulation: every listed agent strictly lowers her true
/// cost by jointly misreporting as listed (a single agent for plain
/// strategyproofness audits).
struct DeviationWitness {
  std::vector<std::size_t> agents;
  Instance true_profile;
  std::vector<std::pair<std::size_t, Rational>> misreports;       // (agent, reported location)
  std::vector<std::pair<Rational, Rational>> costs_before_after;  // aligned with agents
};

/// The finite deviation set that realizes every reachable mechanism output
/// under a unilateral misreport: all alternatives, every zone border and
/// consecutive-alternative midpoint nudged by +/- delta (delta = a quarter of
/// the smallest positive gap between distinct breakpoints, or 1 when they all
/// coincide), the other agents' locations, and one point beyond each end of
/// the alternative span.
std::vector<Rational> candidate_misreports(const Instance& inst, std::size_t agent);

/// Uniform grid over the same widened span, used to spot-check that the
/// candidate set above is not missing profitable deviations.
std::vector<Rational> uniform_deviation_grid(const Instance& inst, std::size_t points);

struct SpResult {
  std::optional<DeviationWitness> witness;
  std::uint64_t deviations_tried = 0;
  bool strategyproof() const { return !witness.has_value(); }
};

/// Unilateral deviation search with exact cost comparisons. Deviations are
/// tried agent by agent, nearest-first from the agent's true location (ties
/// toward the smaller report); the first strict improvement is returned.
SpResult audit_strategyproof(const MechanismId& mech, const Instance& inst);

/// Same search over a caller-supplied deviation set (one set for all agents).
SpResult audit_strategyproof_with(const MechanismId& mech, const Instance& inst,
                                  std::span<const Rational> candidates);

/// Exhaustive coalition search: every nonempty coalition up to max_coalition
/// members, every joint assignment of candidate misreports; a witness needs
/// every member to strictly gain. Throws std::invalid_argument("instance too
/// large for exhaustive group audit") when agent_count > exhaustive_cap.
SpResult audit_group_strategyproof(const MechanismId& mech, const Instance& inst,
                                   std::size_t max_coalition,
                                   std::size_t exhaustive_cap = 4);

/// mechanism_cost / optimal_cost with the zero-optimum convention:
/// 0/0 is ratio 1, positive/0 is unbounded (nullopt).
std::optional<Rational> exact_ratio(const Rational& mechanism_cost,
                                    const Rational& optimal_cost);

enum class RatioBoundRule {
  Fixed,            // one bound for the whole corpus
  SumOptionalRule,  // per-instance bound max(2n+1, 15)
};

struct RatioReport {
  MechanismId mechanism;
  Objective objective = Objective::SumCost;
  RatioBoundRule rule = RatioBoundRule::Fixed;
  Rational bound;          // Fixed rule only
  std::string bound_desc;  // "3", "9", "max(2n+1,15)", ...
  std::size_t instances = 0;
  Rational max_ratio;  // over the corpus, including convention-1 ratios
  std::optional<std::size_t> argmax_index;
  std::optional<Instance> argmax_instance;
  std::size_t violations = 0;         // ratios exceeding the applicable bound
  std::size_t unbounded = 0;          // positive mechanism cost over a zero optimum
  std::size_t over_linear_bound = 0;  // SumOptionalRule: ratios above 2n+1 (reported, not asserted)
  bool pass = false;
};

/// Exact ratio of a mechanism against the brute-force oracle over a corpus.
/// Deterministic for any thread count (aggregation prefers the smallest
/// instance index on ties).
RatioReport audit_ratio(const MechanismId& mech, Objective o,
                        std::span<const Instance> corpus, const Rational& bound,
                        unsigned threads = 1);

/// mechanism_3 / sum-cost with the per-instance bound max(2n+1, 15); also
/// counts how many instances exceed 2n+1 alone.
RatioReport audit_ratio_sum_optional_rule(std::span<const Instance> corpus,
                                          unsigned threads = 1);

/// Aggregate strategyproofness verdict over a corpus.
struct SpCorpusReport {
  MechanismId mechanism;
  std::string scope;  // "sp", "gsp", "sp:orderstat-family", ...
  std::size_t instances = 0;
  std::size_t witnesses = 0;
  std::optional<std::size_t> first_witness_index;
  std::optional<DeviationWitness> first_witness;
  std::uint64_t deviations_tried = 0;
  std::size_t max_coalition = 0;  // gsp scopes only
  bool pass() const { return witnesses == 0; }
};

SpCorpusReport audit_sp_corpus(const MechanismId& mech, std::span<const Instance> corpus,
                               unsigned threads = 1);
/// Audits OrderStat(i) for every i in 1..n on each instance.
SpCorpusReport audit_sp_orderstat_family(std::span<const Instance> corpus,
                                         unsigned threads = 1);

SpCorpusReport audit_gsp_corpus(const MechanismId& mech, std::span<const Instance> corpus,
                                std::size_t max_coalition, unsigned threads = 1);
SpCorpusReport audit_gsp_orderstat_family(std::span<const Instance> corpus,
                                          std::size_t max_coalition, unsigned threads = 1);

struct SearchResult {
  Rational best_ratio;
  std::optional<Instance> best_instance;
  std::uint64_t evaluated = 0;
};

/// Adversarial instance search maximizing the exact mechanism/oracle ratio:
/// structured seed geometries (alternatives clustered around a tight gap with
/// one agent pushed past a zone border), randomized instances from the given
/// generator config, then local perturbations of the incumbent. Deterministic
/// for a fixed config and effort.
SearchResult worst_case_search(const MechanismId& mech, Objective o,
                               const GeneratorConfig& cfg, std::size_t effort);

/// A named instance with known exact behavior, for regression and
/// reproduction runs.
struct ReferenceFixture {
  std::string name;
  Instance instance;
  Objective objective = Objective::SumCost;
  std::pair<Rational, Rational> expected_opt_coords;
  Rational expected_opt_value;

  struct Deviation {
    std::size_t agent = 0;
    Rational report;
    Rational cost_before;
    Rational cost_after;
  };
  /// Present on fixtures demonstrating that the optimum is manipulable.
  std::optional<Deviation> deviation;

  struct CostCheck {
    std::pair<Rational, Rational> coords;  // facility coordinates to evaluate
    Rational location;                     // agent location
    Preference pref = Preference::Both;
    Rational expected;
  };
  std::vector<CostCheck> cost_checks;
};

/// The four built-in fixtures: "sc-opt-not-sp", "mc-opt-not-sp",
/// "lb-sum-family", "lb-max-family".
std::vector<ReferenceFixture> reference_fixtures();

}  // namespace flg
