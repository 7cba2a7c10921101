#include "jrp/pipeline.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "jrp/errors.hpp"

namespace jrp {

WorldState initial_state(const JrpInstance& instance, const SubproblemPlan& plan) {
  WorldState state;
  state.assigned.assign(instance.assigned().begin(), instance.assigned().end());
  state.bands = plan.bands;
  state.mode = plan.mode;
  return state;
}

namespace {

void insert_sorted(std::vector<VacantJob>& vacants, VacantJob job) {
  auto pos = std::find_if(vacants.begin(), vacants.end(), [&](const VacantJob& v) {
    return v.priority < job.priority || (v.priority == job.priority && job.job < v.job);
  });
  vacants.insert(pos, std::move(job));
}

void add_to_band(PriorityBand& band, VacantJob job) {
  band.p_max = std::max(band.p_max, job.priority);
  insert_sorted(band.vacants, std::move(job));
}

void route_vacancy(WorldState& state, VacantJob job) {
  const std::size_t current = state.current_band;
  const std::size_t count = state.bands.size();
  if (current + 1 >= count) {
    state.unfilled.push_back(std::move(job));
    return;
  }
  if (state.mode == PriorityMode::Continuous) {
    const std::size_t natural = continuous_band_of(job.priority, count) - 1;
    add_to_band(state.bands[std::max(natural, current + 1)], std::move(job));
    return;
  }
  for (std::size_t b = current + 1; b < count; ++b) {
    if (state.bands[b].p_min == job.priority) {
      add_to_band(state.bands[b], std::move(job));
      return;
    }
  }
  state.dropped.push_back(std::move(job));
}

}  // namespace

WorldState apply_moves(WorldState state, std::span<const Move> moves) {
  if (state.current_band >= state.bands.size()) {
    if (moves.empty()) return state;
    throw FeasibilityError("no open band to apply moves to");
  }
  std::vector<Move> ordered(moves.begin(), moves.end());
  std::sort(ordered.begin(), ordered.end());

  std::set<JobId> vacants_seen;
  std::set<AgentId> agents_seen;
  for (const auto& m : ordered) {
    if (!vacants_seen.insert(m.vacant).second) {
      throw FeasibilityError("vacant '" + m.vacant.value + "' filled twice");
    }
    if (!agents_seen.insert(m.agent).second) {
      throw FeasibilityError("agent '" + m.agent.value + "' moved twice");
    }
  }

  auto& band = state.bands[state.current_band];
  std::vector<VacantJob> vacated;
  for (const auto& m : ordered) {
    auto open = std::find_if(band.vacants.begin(), band.vacants.end(),
                             [&](const VacantJob& v) { return v.job == m.vacant; });
    if (open == band.vacants.end()) {
      throw FeasibilityError("vacant '" + m.vacant.value + "' is not open in band " +
                             std::to_string(band.index));
    }
    auto slot = std::find_if(state.assigned.begin(), state.assigned.end(),
                             [&](const AssignedJob& a) { return a.agent == m.agent; });
    if (slot == state.assigned.end()) {
      throw FeasibilityError("unknown agent '" + m.agent.value + "'");
    }
    vacated.push_back({slot->job, slot->priority});
    state.history.push_back({band.index, m.vacant, m.agent, slot->job});
    *slot = AssignedJob{open->job, m.agent, open->priority};
    band.vacants.erase(open);
  }
  for (auto& job : vacated) route_vacancy(state, std::move(job));
  return state;
}

WorldState close_band(WorldState state, bool carry_unfilled) {
  if (state.current_band >= state.bands.size()) return state;
  auto leftover = std::move(state.bands[state.current_band].vacants);
  state.bands[state.current_band].vacants.clear();
  const bool has_next = state.current_band + 1 < state.bands.size();
  for (auto& job : leftover) {
    if (carry_unfilled && has_next) {
      add_to_band(state.bands[state.current_band + 1], std::move(job));
    } else {
      state.unfilled.push_back(std::move(job));
    }
  }
  ++state.current_band;
  return state;
}

std::vector<Move> repair_conflicts(std::span<const Move> moves,
                                   std::span<const double> scores) {
  std::vector<std::size_t> order(moves.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  std::set<JobId> rows;
  std::set<AgentId> columns;
  std::vector<bool> keep(moves.size(), false);
  for (std::size_t k : order) {
    if (rows.contains(moves[k].vacant) || columns.contains(moves[k].agent)) continue;
    rows.insert(moves[k].vacant);
    columns.insert(moves[k].agent);
    keep[k] = true;
  }
  std::vector<Move> out;
  for (std::size_t k = 0; k < moves.size(); ++k) {
    if (keep[k]) out.push_back(moves[k]);
  }
  return out;
}

PipelineReport run(const JrpInstance& instance, const SubproblemPlan& plan,
                   const SolverConfig& solver, const PipelineOptions& options) {
  solver.validate();
  PipelineReport report;
  WorldState state = initial_state(instance, plan);
  const std::size_t job_count = state.assigned.size();

  double alpha_sum = 0.0;
  std::size_t alpha_bands = 0;

  while (state.current_band < state.bands.size()) {
    const PriorityBand& band = state.bands[state.current_band];
    BandRecord record;
    record.band = band.index;
    record.vacants_considered = band.vacants.size();

    const auto agents = eligible_agents(state.assigned, band);
    record.agents_considered = agents.size();
    auto candidates = enumerate_candidates(instance, band.vacants, agents);
    record.variables = candidates.pairs.size();
    record.pruned_negative_gain = candidates.pruned_negative_gain;
    record.pruned_negative_score = candidates.pruned_negative_score;

    std::vector<Move> chosen;
    if (!candidates.pairs.empty()) {
      const double penalty = options.penalty.value_or(
          default_penalty(instance, candidates.pairs, agents));
      record.penalty = penalty;
      const QuboProblem qubo = build_qubo(instance, candidates.pairs, agents, penalty, penalty);
      SolverConfig band_solver = solver;
      band_solver.seed = solver.seed + (band.index - 1);
      const SolveResult result = jrp::solve(qubo, band_solver);
      record.energy = result.best.energy;
      chosen = result.best.moves;

      std::vector<double> scores;
      for (const auto& m : chosen) {
        auto a = std::find_if(agents.begin(), agents.end(),
                              [&](const AssignedJob& j) { return j.agent == m.agent; });
        scores.push_back(score(instance, {m.vacant, instance.job_priority(m.vacant)}, *a));
      }
      auto repaired = repair_conflicts(chosen, scores);
      if (repaired.size() != chosen.size()) {
        record.repaired = true;
        chosen = std::move(repaired);
      }
    }

    // Scores are taken against the agents' positions before this band moves them.
    std::vector<ReportedMove> band_moves;
    for (const auto& m : chosen) {
      auto a = std::find_if(agents.begin(), agents.end(),
                            [&](const AssignedJob& j) { return j.agent == m.agent; });
      const VacantJob vacant{m.vacant, instance.job_priority(m.vacant)};
      band_moves.push_back({{band.index, m.vacant, m.agent, a->job},
                            score(instance, vacant, *a),
                            priority_gain(instance, vacant, *a)});
    }

    state = apply_moves(std::move(state), chosen);
    if (state.assigned.size() != job_count) {
      throw InvariantError("assigned job count changed during band " +
                           std::to_string(record.band));
    }
    for (const auto& m : band_moves) {
      if (!(m.priority_gain > 0.0) || !(m.score > 0.0)) {
        throw InvariantError("applied move without positive gain and score");
      }
    }

    record.moves_applied = chosen.size();
    record.vacants_filled = chosen.size();
    if (record.vacants_considered > 0) {
      alpha_sum += static_cast<double>(record.vacants_filled) /
                   static_cast<double>(record.vacants_considered);
      ++alpha_bands;
    }
    report.total_variables += record.variables;
    report.largest_subproblem = std::max(report.largest_subproblem, record.variables);
    for (auto& m : band_moves) {
      report.total_score += m.score;
      report.moves.push_back(std::move(m));
    }
    report.per_band.push_back(record);

    state = close_band(std::move(state), options.carry_unfilled);
  }

  report.final_assigned = std::move(state.assigned);
  report.unfilled = std::move(state.unfilled);
  report.dropped = std::move(state.dropped);
  report.alpha_estimate = alpha_bands ? alpha_sum / static_cast<double>(alpha_bands) : 0.0;
  return report;
}

PipelineReport run(const JrpInstance& instance, std::optional<std::size_t> bands,
                   const SolverConfig& solver, const PipelineOptions& options) {
  return run(instance, build_plan(instance, bands), solver, options);
}

PipelineReport run_full(const JrpInstance& instance, const SolverConfig& solver,
                        const PipelineOptions& options) {
  return run(instance, build_single_band_plan(instance), solver, options);
}

PrunedProblem build_pruned_problem(const JrpInstance& instance,
                                   std::optional<double> penalty) {
  const auto plan = build_single_band_plan(instance);
  const auto agents = eligible_agents(instance, plan.bands.front());
  PrunedProblem out{enumerate_candidates(instance, plan.bands.front().vacants, agents), {}};
  const double lambda =
      penalty.value_or(default_penalty(instance, out.candidates.pairs, agents));
  out.qubo = build_qubo(instance, out.candidates.pairs, agents, lambda, lambda);
  return out;
}

}  // namespace jrp
