#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "jrp/heuristics.hpp"
#include "jrp/model.hpp"
#include "jrp/qubo.hpp"
#include "jrp/solvers.hpp"

namespace jrp {

struct AppliedMove {
  std::size_t band = 0;  // 1-based
  JobId vacant;
  AgentId agent;
  JobId vacated;  // the job the agent left
  friend bool operator==(const AppliedMove&, const AppliedMove&) = default;
};

// Mutable view of the world between band solves.
struct WorldState {
  std::vector<AssignedJob> assigned;  // always J entries
  std::vector<PriorityBand> bands;    // open vacants per band
  PriorityMode mode = PriorityMode::Continuous;
  std::size_t current_band = 0;  // 0-based index of the band being solved
  std::vector<AppliedMove> history;
  // Vacated jobs no later band can take while later bands remain (discrete
  // mode only: the job's priority matches no later level).
  std::vector<VacantJob> dropped;
  // Vacancies left once the last band is closed.
  std::vector<VacantJob> unfilled;

  friend bool operator==(const WorldState&, const WorldState&) = default;
};

WorldState initial_state(const JrpInstance& instance, const SubproblemPlan& plan);

// Applies moves taken while solving the current band. Each moved agent takes
// over the vacant in its existing slot of `assigned`, so J is preserved; the
// job it left becomes a vacancy routed to a later band:
//  - continuous: the band whose interval holds its priority, or the next
//    band (with p_max raised) if that interval is the current one or earlier;
//  - discrete: the later band whose level equals its priority, else dropped.
// With no later band the vacancy is recorded as unfilled. Moves are applied in
// sorted order, so the result does not depend on their order. Throws
// FeasibilityError on duplicate agents or vacants, on a vacant that is not
// open in the current band, or on an unknown agent.
WorldState apply_moves(WorldState state, std::span<const Move> moves);

// Finishes the current band: vacants still open roll into the next band when
// `carry_unfilled` is set (otherwise, or after the last band, they are
// recorded as unfilled), then advances current_band.
WorldState close_band(WorldState state, bool carry_unfilled);

struct PipelineOptions {
  // Unfilled vacants of band d are offered again in band d+1.
  bool carry_unfilled = true;
  // Penalty weight for both constraint families; unset means
  // default_penalty() per band.
  std::optional<double> penalty;
};

struct BandRecord {
  std::size_t band = 0;
  std::size_t vacants_considered = 0;
  std::size_t agents_considered = 0;
  std::size_t variables = 0;  // after pruning
  std::size_t pruned_negative_gain = 0;
  std::size_t pruned_negative_score = 0;
  double penalty = 0.0;
  double energy = 0.0;
  std::size_t moves_applied = 0;
  std::size_t vacants_filled = 0;
  // The solver returned a bitstring with two moves in one row or column and
  // the lowest-score conflicting moves were dropped.
  bool repaired = false;

  std::size_t grid_size() const { return vacants_considered * agents_considered; }
};

struct ReportedMove {
  AppliedMove move;
  double score = 0.0;
  double priority_gain = 0.0;
};

struct PipelineReport {
  std::vector<BandRecord> per_band;
  std::vector<AssignedJob> final_assigned;
  std::vector<ReportedMove> moves;
  std::vector<VacantJob> unfilled;
  std::vector<VacantJob> dropped;
  // Mean over bands that considered at least one vacant of the filled fraction.
  double alpha_estimate = 0.0;
  std::size_t total_variables = 0;
  std::size_t largest_subproblem = 0;
  double total_score = 0.0;
};

PipelineReport run(const JrpInstance& instance, const SubproblemPlan& plan,
                   const SolverConfig& solver, const PipelineOptions& options = {});

// Builds the plan with build_plan(instance, bands) and runs it.
PipelineReport run(const JrpInstance& instance, std::optional<std::size_t> bands,
                   const SolverConfig& solver, const PipelineOptions& options = {});

// Unsegmented solve: a single band with every vacant, no rollover.
PipelineReport run_full(const JrpInstance& instance, const SolverConfig& solver,
                        const PipelineOptions& options = {});

// The single pruned QUBO of the unsegmented problem, with default penalties.
struct PrunedProblem {
  CandidateSet candidates;
  QuboProblem qubo;
};
PrunedProblem build_pruned_problem(const JrpInstance& instance,
                                   std::optional<double> penalty = std::nullopt);

// Keeps the highest-score moves that do not share a vacant or an agent.
// `scores[k]` belongs to `moves[k]`; ties keep the earlier move.
std::vector<Move> repair_conflicts(std::span<const Move> moves,
                                   std::span<const double> scores);

}  // namespace jrp
