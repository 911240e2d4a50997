#include "flg/audit.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <thread>

#include "internal.hpp"

namespace flg {

namespace {

// Breakpoints of the piecewise-constant map from a single report to the
// mechanism output: zone borders (pair selection) and consecutive-alternative
// midpoints (single-facility selection). Distinct and sorted.
std::vector<Rational> selection_breakpoints(const std::vector<Rational>& alts) {
  std::vector<Rational> points;
  const std::size_t m = alts.size();
  points.reserve(2 * m);
  for (std::size_t k = 0; k + 2 < m; ++k) {
    points.push_back(Rational::midpoint(alts[k], alts[k + 2]));
  }
  for (std::size_t k = 0; k + 1 < m; ++k) {
    points.push_back(Rational::midpoint(alts[k], alts[k + 1]));
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

Rational breakpoint_nudge(const std::vector<Rational>& breakpoints) {
  // A quarter of the smallest positive gap keeps each nudged point strictly
  // inside the adjacent selection region; 1 when there is a single breakpoint.
  if (breakpoints.size() < 2) return Rational(1);
  Rational gap = breakpoints[1] - breakpoints[0];
  for (std::size_t i = 2; i < breakpoints.size(); ++i) {
    gap = min(gap, breakpoints[i] - breakpoints[i - 1]);
  }
  return gap / Rational(4);
}

// Candidate set minus the other agents' locations (shared by every agent).
std::vector<Rational> shared_candidates(const Instance& inst) {
  const auto& alts = inst.alternatives();
  std::vector<Rational> out = alts;
  const auto breakpoints = selection_breakpoints(alts);
  const Rational nudge = breakpoint_nudge(breakpoints);
  for (const Rational& b : breakpoints) {
    out.push_back(b - nudge);
    out.push_back(b + nudge);
  }
  const Rational span = alts.back() - alts.front();
  out.push_back(alts.front() - span - Rational(1));
  out.push_back(alts.back() + span + Rational(1));
  return out;
}

void sort_unique(std::vector<Rational>& values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
}

// Deviations to try for one agent, nearest to her true location first, ties
// toward the smaller report; the truthful report is dropped.
std::vector<Rational> ordered_deviations(std::vector<Rational> candidates,
                                         const Rational& truth) {
  sort_unique(candidates);
  std::erase(candidates, truth);
  std::vector<std::pair<Rational, Rational>> keyed;
  keyed.reserve(candidates.size());
  for (Rational& c : candidates) {
    keyed.emplace_back(abs_diff(c, truth), std::move(c));
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<Rational> out;
  out.reserve(keyed.size());
  for (auto& [dist, value] : keyed) out.push_back(std::move(value));
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> chunk_ranges(std::size_t count,
                                                              unsigned threads) {
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  if (count == 0) return ranges;
  const std::size_t chunks =
      std::max<std::size_t>(1, std::min<std::size_t>(threads, count));
  const std::size_t per = (count + chunks - 1) / chunks;
  for (std::size_t begin = 0; begin < count; begin += per) {
    ranges.emplace_back(begin, std::min(count, begin + per));
  }
  return ranges;
}

template <typename Work>
void run_ranges(const std::vector<std::pair<std::size_t, std::size_t>>& ranges,
                Work&& work) {
  if (ranges.size() <= 1) {
    if (!ranges.empty()) work(0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(ranges.size());
  for (std::size_t chunk = 0; chunk < ranges.size(); ++chunk) {
    pool.emplace_back([&work, chunk] { work(chunk); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

std::vector<Rational> candidate_misreports(const Instance& inst, std::size_t agent) {
  if (agent >= inst.agent_count()) throw std::out_of_range("agent index out of range");
  std::vector<Rational> out = shared_candidates(inst);
  for (std::size_t j = 0; j < inst.agent_count(); ++j) {
    if (j != agent) out.push_back(inst.agent(j).location);
  }
  sort_unique(out);
  return out;
}

std::vector<Rational> uniform_deviation_grid(const Instance& inst, std::size_t points) {
  if (points < 2) throw std::invalid_argument("deviation grid needs at least 2 points");
  const auto& alts = inst.alternatives();
  const Rational span = alts.back() - alts.front();
  const Rational lo = alts.front() - span - Rational(1);
  const Rational hi = alts.back() + span + Rational(1);
  const Rational step = (hi - lo) / Rational(static_cast<long>(points - 1));
  std::vector<Rational> grid;
  grid.reserve(points);
  for (std::size_t k = 0; k < points; ++k) {
    grid.push_back(lo + step * Rational(static_cast<long>(k)));
  }
  return grid;
}

namespace {

SpResult sp_search(const MechanismId& mech, const Instance& inst,
                   const std::vector<Rational>* fixed_candidates) {
  const detail::Evaluator evaluator(inst, mech);
  const auto& alts = inst.alternatives();
  std::vector<Rational> locations = inst.locations();
  const Placement honest = evaluator.eval(locations);

  SpResult result;
  for (std::size_t i = 0; i < inst.agent_count(); ++i) {
    const Agent& agent = inst.agent(i);
    const Rational before = detail::span_agent_cost(honest, agent.location, agent.pref, alts);
    const std::vector<Rational> deviations = ordered_deviations(
        fixed_candidates ? *fixed_candidates : candidate_misreports(inst, i),
        agent.location);
    for (const Rational& report : deviations) {
      locations[i] = report;
      const Placement deviated = evaluator.eval(locations);
      const Rational after =
          detail::span_agent_cost(deviated, agent.location, agent.pref, alts);
      ++result.deviations_tried;
      if (after < before) {
        result.witness = DeviationWitness{
            {i}, inst, {{i, report}}, {{before, after}}};
        return result;
      }
    }
    locations[i] = agent.location;
  }
  return result;
}

}  // namespace

SpResult audit_strategyproof(const MechanismId& mech, const Instance& inst) {
  return sp_search(mech, inst, nullptr);
}

SpResult audit_strategyproof_with(const MechanismId& mech, const Instance& inst,
                                  std::span<const Rational> candidates) {
  const std::vector<Rational> fixed(candidates.begin(), candidates.end());
  return sp_search(mech, inst, &fixed);
}

SpResult audit_group_strategyproof(const MechanismId& mech, const Instance& inst,
                                   std::size_t max_coalition,
                                   std::size_t exhaustive_cap) {
  const std::size_t n = inst.agent_count();
  if (n > exhaustive_cap) {
    throw std::invalid_argument("instance too large for exhaustive group audit");
  }
  if (max_coalition < 1) throw std::invalid_argument("coalition size must be at least 1");

  const detail::Evaluator evaluator(inst, mech);
  const auto& alts = inst.alternatives();
  std::vector<Rational> locations = inst.locations();
  const Placement honest = evaluator.eval(locations);

  std::vector<Rational> before;
  before.reserve(n);
  for (const Agent& a : inst.agents()) {
    before.push_back(detail::span_agent_cost(honest, a.location, a.pref, alts));
  }
  std::vector<std::vector<Rational>> deviations(n);
  for (std::size_t i = 0; i < n; ++i) {
    deviations[i] = ordered_deviations(candidate_misreports(inst, i),
                                       inst.agent(i).location);
  }

  SpResult result;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) > max_coalition) continue;

    std::vector<std::size_t> members;
    bool hopeless = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) continue;
      // An agent with zero cost can never strictly gain, so no coalition
      // containing her can produce a witness.
      if (before[i].is_zero()) {
        hopeless = true;
        break;
      }
      members.push_back(i);
    }
    if (hopeless) continue;

    std::vector<std::size_t> cursor(members.size(), 0);
    bool exhausted = false;
    while (!exhausted) {
      for (std::size_t j = 0; j < members.size(); ++j) {
        locations[members[j]] = deviations[members[j]][cursor[j]];
      }
      const Placement deviated = evaluator.eval(locations);
      ++result.deviations_tried;

      bool all_gain = true;
      for (const std::size_t i : members) {
        const Agent& a = inst.agent(i);
        if (!(detail::span_agent_cost(deviated, a.location, a.pref, alts) < before[i])) {
          all_gain = false;
          break;
        }
      }
      if (all_gain) {
        DeviationWitness witness{members, inst, {}, {}};
        for (const std::size_t i : members) {
          witness.misreports.emplace_back(i, locations[i]);
          const Agent& a = inst.agent(i);
          witness.costs_before_after.emplace_back(
              before[i], detail::span_agent_cost(deviated, a.location, a.pref, alts));
        }
        result.witness = std::move(witness);
        for (const std::size_t i : members) locations[i] = inst.agent(i).location;
        return result;
      }

      std::size_t j = 0;
      while (j < members.size()) {
        if (++cursor[j] < deviations[members[j]].size()) break;
        cursor[j] = 0;
        ++j;
      }
      exhausted = j == members.size();
    }
    for (const std::size_t i : members) locations[i] = inst.agent(i).location;
  }
  return result;
}

std::optional<Rational> exact_ratio(const Rational& mechanism_cost,
                                    const Rational& optimal_cost) {
  if (optimal_cost.is_zero()) {
    if (mechanism_cost.is_zero()) return Rational(1);
    return std::nullopt;
  }
  return mechanism_cost / optimal_cost;
}

namespace {

struct RatioLocal {
  bool have = false;
  Rational max_ratio;
  std::size_t argmax = 0;
  std::size_t violations = 0;
  std::size_t unbounded = 0;
  std::size_t over_linear = 0;
};

RatioReport finish_ratio_report(RatioReport report, std::span<const Instance> corpus,
                                const std::vector<RatioLocal>& locals) {
  bool have = false;
  for (const RatioLocal& local : locals) {
    report.violations += local.violations;
    report.unbounded += local.unbounded;
    report.over_linear_bound += local.over_linear;
    if (!local.have) continue;
    // Chunks are scanned in index order, so taking a strictly larger ratio
    // keeps the smallest argmax index on ties regardless of thread count.
    if (!have || local.max_ratio > report.max_ratio) {
      report.max_ratio = local.max_ratio;
      report.argmax_index = local.argmax;
      have = true;
    }
  }
  if (report.argmax_index) report.argmax_instance = corpus[*report.argmax_index];
  report.pass = report.violations == 0 && report.unbounded == 0;
  return report;
}

template <typename BoundOf>
RatioReport ratio_audit_impl(const MechanismId& mech, Objective objective,
                             std::span<const Instance> corpus, RatioReport report,
                             unsigned threads, BoundOf&& bound_of) {
  report.mechanism = mech;
  report.objective = objective;
  report.instances = corpus.size();

  const auto ranges = chunk_ranges(corpus.size(), threads);
  std::vector<RatioLocal> locals(ranges.size());
  run_ranges(ranges, [&](std::size_t chunk) {
    auto [begin, end] = ranges[chunk];
    RatioLocal& local = locals[chunk];
    for (std::size_t i = begin; i < end; ++i) {
      const Instance& inst = corpus[i];
      const Placement placement = run_mechanism(mech, inst);
      const Rational mech_cost = placement_cost(placement, inst, objective);
      const OptResult opt = brute_force_opt(inst, objective);
      const auto ratio = exact_ratio(mech_cost, opt.value);
      if (!ratio) {
        ++local.unbounded;
        continue;
      }
      const std::size_t n = inst.agent_count();
      if (*ratio > bound_of(n)) ++local.violations;
      if (report.rule == RatioBoundRule::SumOptionalRule &&
          *ratio > Rational(static_cast<long>(2 * n + 1))) {
        ++local.over_linear;
      }
      if (!local.have || *ratio > local.max_ratio) {
        local.have = true;
        local.max_ratio = *ratio;
        local.argmax = i;
      }
    }
  });
  return finish_ratio_report(std::move(report), corpus, locals);
}

}  // namespace

RatioReport audit_ratio(const MechanismId& mech, Objective objective,
                        std::span<const Instance> corpus, const Rational& bound,
                        unsigned threads) {
  RatioReport report;
  report.rule = RatioBoundRule::Fixed;
  report.bound = bound;
  report.bound_desc = bound.str();
  return ratio_audit_impl(mech, objective, corpus, std::move(report), threads,
                          [&bound](std::size_t) { return bound; });
}

RatioReport audit_ratio_sum_optional_rule(std::span<const Instance> corpus,
                                          unsigned threads) {
  RatioReport report;
  report.rule = RatioBoundRule::SumOptionalRule;
  report.bound_desc = "max(2n+1,15)";
  return ratio_audit_impl(
      MechanismId{MechKind::M3}, Objective::SumCost, corpus, std::move(report), threads,
      [](std::size_t n) {
        return max(Rational(static_cast<long>(2 * n + 1)), Rational(15));
      });
}

namespace {

struct SpLocal {
  std::size_t witnesses = 0;
  std::optional<std::size_t> first_index;
  std::optional<DeviationWitness> first;
  std::uint64_t tried = 0;
};

template <typename PerInstance>
SpCorpusReport sp_corpus_impl(SpCorpusReport report, std::size_t count,
                              unsigned threads, PerInstance&& per_instance) {
  report.instances = count;
  const auto ranges = chunk_ranges(count, threads);
  std::vector<SpLocal> locals(ranges.size());
  run_ranges(ranges, [&](std::size_t chunk) {
    auto [begin, end] = ranges[chunk];
    SpLocal& local = locals[chunk];
    for (std::size_t i = begin; i < end; ++i) {
      per_instance(i, local);
    }
  });
  for (SpLocal& local : locals) {
    report.witnesses += local.witnesses;
    report.deviations_tried += local.tried;
    if (local.first_index && !report.first_witness_index) {
      report.first_witness_index = local.first_index;
      report.first_witness = std::move(local.first);
    }
  }
  return report;
}

void absorb(SpLocal& local, std::size_t index, SpResult&& result) {
  local.tried += result.deviations_tried;
  if (result.witness) {
    ++local.witnesses;
    if (!local.first_index) {
      local.first_index = index;
      local.first = std::move(result.witness);
    }
  }
}

}  // namespace

SpCorpusReport audit_sp_corpus(const MechanismId& mech, std::span<const Instance> corpus,
                               unsigned threads) {
  SpCorpusReport report;
  report.mechanism = mech;
  report.scope = "sp";
  return sp_corpus_impl(std::move(report), corpus.size(), threads,
                        [&](std::size_t i, SpLocal& local) {
                          absorb(local, i, audit_strategyproof(mech, corpus[i]));
                        });
}

SpCorpusReport audit_sp_orderstat_family(std::span<const Instance> corpus,
                                         unsigned threads) {
  SpCorpusReport report;
  report.mechanism = MechanismId{MechKind::OrderStat, 1};
  report.scope = "sp:orderstat-family";
  return sp_corpus_impl(
      std::move(report), corpus.size(), threads, [&](std::size_t i, SpLocal& local) {
        for (std::size_t k = 1; k <= corpus[i].agent_count(); ++k) {
          absorb(local, i,
                 audit_strategyproof(MechanismId{MechKind::OrderStat, k}, corpus[i]));
        }
      });
}

SpCorpusReport audit_gsp_corpus(const MechanismId& mech, std::span<const Instance> corpus,
                                std::size_t max_coalition, unsigned threads) {
  SpCorpusReport report;
  report.mechanism = mech;
  report.scope = "gsp";
  report.max_coalition = max_coalition;
  return sp_corpus_impl(
      std::move(report), corpus.size(), threads, [&](std::size_t i, SpLocal& local) {
        absorb(local, i, audit_group_strategyproof(mech, corpus[i], max_coalition));
      });
}

SpCorpusReport audit_gsp_orderstat_family(std::span<const Instance> corpus,
                                          std::size_t max_coalition, unsigned threads) {
  SpCorpusReport report;
  report.mechanism = MechanismId{MechKind::OrderStat, 1};
  report.scope = "gsp:orderstat-family";
  report.max_coalition = max_coalition;
  return sp_corpus_impl(
      std::move(report), corpus.size(), threads, [&](std::size_t i, SpLocal& local) {
        for (std::size_t k = 1; k <= corpus[i].agent_count(); ++k) {
          absorb(local, i,
                 audit_group_strategyproof(MechanismId{MechKind::OrderStat, k},
                                           corpus[i], max_coalition));
        }
      });
}

namespace {

// Geometries where the mechanism's anchor statistic sits on the closed side
// of a zone border while the rest of the profile pulls the optimum into the
// tight cluster on the other side. The ratio approaches the proven bounds as
// the cluster gap shrinks.
std::vector<Instance> structured_seed_instances(CorpusKind kind) {
  const Preference pref =
      kind == CorpusKind::SingleFacility ? Preference::F1Only : Preference::Both;
  std::vector<Instance> seeds;
  for (int p = 2; p <= 10; ++p) {
    const Rational eps(1, 1L << p);
    const Rational one(1);
    const std::vector<Rational> tight = {Rational(-1), one, one + eps};
    const std::vector<Rational> wide = {Rational(-1), one, one + eps,
                                        one + eps + eps};
    const std::vector<std::vector<Rational>> agent_sets = {
        {Rational(0), one + eps.half()},
        {Rational(0), Rational(2)},
        {Rational(0), one + eps},
        {Rational(0), Rational(2) + eps},
    };
    for (const auto& alts : {tight, wide}) {
      for (const auto& xs : agent_sets) {
        std::vector<Agent> agents;
        agents.reserve(xs.size());
        for (const Rational& x : xs) agents.push_back(Agent{x, pref});
        seeds.emplace_back(std::move(agents), alts);
      }
    }
  }
  return seeds;
}

Instance mutate_instance(const Instance& inst, std::mt19937_64& rng) {
  std::vector<Agent> agents = inst.agents();
  std::vector<Rational> alts = inst.alternatives();
  const std::size_t n = agents.size();
  const std::size_t m = alts.size();
  switch (rng() % 4) {
    case 0: {  // move an agent onto a selection breakpoint neighborhood
      const auto candidates = candidate_misreports(inst, rng() % n);
      const std::size_t who = rng() % n;
      const std::size_t where = rng() % candidates.size();
      agents[who].location = candidates[where];
      break;
    }
    case 1: {  // tighten one alternative gap
      const std::size_t k = rng() % (m - 1);
      alts[k + 1] = Rational::midpoint(alts[k], alts[k + 1]);
      break;
    }
    case 2: {  // drag an alternative halfway toward an agent
      const std::size_t slot = rng() % m;
      const std::size_t who = rng() % n;
      alts[slot] = Rational::midpoint(alts[slot], agents[who].location);
      break;
    }
    default: {  // drag an agent halfway toward an alternative
      const std::size_t who = rng() % n;
      const std::size_t slot = rng() % m;
      agents[who].location = Rational::midpoint(agents[who].location, alts[slot]);
      break;
    }
  }
  return Instance(std::move(agents), std::move(alts));
}

}  // namespace

SearchResult worst_case_search(const MechanismId& mech, Objective objective,
                               const GeneratorConfig& cfg, std::size_t effort) {
  SearchResult result;
  result.best_ratio = Rational(0);

  const auto consider = [&](const Instance& inst) {
    if (mech.kind == MechKind::OrderStat && mech.order_index > inst.agent_count()) {
      return;
    }
    ++result.evaluated;
    const Placement placement = run_mechanism(mech, inst);
    const Rational mech_cost = placement_cost(placement, inst, objective);
    const OptResult opt = brute_force_opt(inst, objective);
    const auto ratio = exact_ratio(mech_cost, opt.value);
    if (!ratio) return;
    if (!result.best_instance || *ratio > result.best_ratio) {
      result.best_ratio = *ratio;
      result.best_instance = inst;
    }
  };

  for (const Instance& seed : structured_seed_instances(cfg.kind)) consider(seed);

  InstanceGenerator generator(cfg);
  for (std::size_t i = 0; i < effort; ++i) consider(generator.next());

  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  for (std::size_t i = 0; i < effort && result.best_instance; ++i) {
    consider(mutate_instance(*result.best_instance, rng));
  }
  return result;
}

std::vector<ReferenceFixture> reference_fixtures() {
  using enum Preference;
  std::vector<ReferenceFixture> fixtures;

  // Sum-cost optimum is manipulable: the left agent pulls the pair onto the
  // isolated left slots by reporting the middle alternative.
  fixtures.push_back(ReferenceFixture{
      .name = "sc-opt-not-sp",
      .instance = Instance({Agent{Rational(0), Both}, Agent{Rational(2), Both}},
                           {Rational(-51, 50), Rational(-1), Rational(103, 100)}),
      .objective = Objective::SumCost,
      .expected_opt_coords = {Rational(-1), Rational(103, 100)},
      .expected_opt_value = Rational(403, 100),
      .deviation = ReferenceFixture::Deviation{0, Rational(-1), Rational(103, 100),
                                               Rational(51, 50)},
      .cost_checks = {{{Rational(-1), Rational(103, 100)}, Rational(0), Both,
                       Rational(103, 100)}},
  });

  // Max-cost optimum is manipulable: the right agent drags the pair onto the
  // tight right cluster by exaggerating rightward.
  fixtures.push_back(ReferenceFixture{
      .name = "mc-opt-not-sp",
      .instance =
          Instance({Agent{Rational(-1, 100), Both}, Agent{Rational(1, 100), Both}},
                   {Rational(-1), Rational(1), Rational(101, 100)}),
      .objective = Objective::MaxCost,
      .expected_opt_coords = {Rational(-1), Rational(1)},
      .expected_opt_value = Rational(101, 100),
      .deviation = ReferenceFixture::Deviation{1, Rational(2), Rational(101, 100),
                                               Rational(1)},
      .cost_checks = {{{Rational(-1), Rational(1)}, Rational(1, 100), Both,
                       Rational(101, 100)}},
  });

  // Lower-bound geometry for the sum objective: duplicated slots at -1 and 1;
  // once an agent sits at -1 the optimum collapses onto (-1, -1).
  fixtures.push_back(ReferenceFixture{
      .name = "lb-sum-family",
      .instance = Instance({Agent{Rational(-1), Both}, Agent{Rational(1, 100), Both}},
                           {Rational(-1), Rational(-1), Rational(1), Rational(1)}),
      .objective = Objective::SumCost,
      .expected_opt_coords = {Rational(-1), Rational(-1)},
      .expected_opt_value = Rational(101, 100),
      .deviation = std::nullopt,
      .cost_checks =
          {
              {{Rational(-1), Rational(-1)}, Rational(-1, 100), Both, Rational(99, 100)},
              {{Rational(-1), Rational(1)}, Rational(-1, 100), Both, Rational(101, 100)},
              {{Rational(1), Rational(1)}, Rational(-1, 100), Both, Rational(101, 100)},
          },
  });

  // Lower-bound geometry for the max objective: an agent far left forces
  // (-1, -1); any placement touching the right cluster costs 3 + 1/100.
  fixtures.push_back(ReferenceFixture{
      .name = "lb-max-family",
      .instance =
          Instance({Agent{Rational(-201, 100), Both}, Agent{Rational(1, 100), Both}},
                   {Rational(-1), Rational(-1), Rational(1), Rational(1)}),
      .objective = Objective::MaxCost,
      .expected_opt_coords = {Rational(-1), Rational(-1)},
      .expected_opt_value = Rational(101, 100),
      .deviation = std::nullopt,
      .cost_checks =
          {
              {{Rational(1), Rational(1)}, Rational(-201, 100), Both, Rational(301, 100)},
              {{Rational(-1), Rational(-1)}, Rational(-1, 100), Both, Rational(99, 100)},
          },
  });
  return fixtures;
}

}  // namespace flg
