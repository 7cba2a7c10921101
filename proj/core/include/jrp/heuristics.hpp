#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "jrp/model.hpp"
#include "jrp/qubo.hpp"

namespace jrp {

// Pairs that survive both pruning rules: positive score and strictly
// positive priority gain. Each rejected pair is counted once, under the first
// rule it fails (priority gain is checked first).
struct CandidateSet {
  std::vector<Move> pairs;
  std::size_t pruned_negative_gain = 0;
  std::size_t pruned_negative_score = 0;

  std::size_t total() const {
    return pairs.size() + pruned_negative_gain + pruned_negative_score;
  }
};

CandidateSet enumerate_candidates(const JrpInstance& instance,
                                  std::span<const VacantJob> vacants,
                                  std::span<const AssignedJob> agents);

// A group of vacant jobs solved together. Every member's priority lies in
// [p_min, p_max]; in continuous mode the nominal interval is the half-open
// (p_min, p_max], in discrete mode p_min == p_max is the level value.
struct PriorityBand {
  std::size_t index = 1;  // 1-based, 1 is the highest priority band
  double p_min = 0.0;
  double p_max = 0.0;
  std::vector<VacantJob> vacants;

  // Highest priority among the band's current vacants (0 if empty). This is
  // the threshold agents must stay strictly below to be considered.
  double running_max() const;

  friend bool operator==(const PriorityBand&, const PriorityBand&) = default;
};

struct SubproblemPlan {
  std::vector<PriorityBand> bands;
  PriorityMode mode = PriorityMode::Continuous;
};

// Discrete mode: one band per distinct vacant priority, descending; `bands`
// defaults to (and must equal) that count. Continuous mode: `bands` equal
// intervals (1 - d/D, 1 - (d-1)/D]; `bands` is required.
SubproblemPlan build_plan(const JrpInstance& instance,
                          std::optional<std::size_t> bands = std::nullopt);

// One band holding every vacant, i.e. the unsegmented problem.
SubproblemPlan build_single_band_plan(const JrpInstance& instance);

// 1-based band number for a priority under D equal continuous intervals.
std::size_t continuous_band_of(double priority, std::size_t band_count);

// Agents whose current job priority is strictly below band.running_max().
std::vector<AssignedJob> eligible_agents(std::span<const AssignedJob> agents,
                                         const PriorityBand& band);
std::vector<AssignedJob> eligible_agents(const JrpInstance& instance,
                                         const PriorityBand& band);

}  // namespace jrp
