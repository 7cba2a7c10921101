#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "jrp/generator.hpp"
#include "jrp/pipeline.hpp"
#include "jrp/solvers.hpp"

namespace jrp {

// Measures how segmentation shrinks the subproblems on random continuous
// instances. Every (K, D) cell reuses the same instances for each D so the
// segmented and unsegmented solves are compared on identical data.
struct ScalingParams {
  std::vector<std::size_t> total_jobs{8, 12, 16};
  std::vector<std::size_t> bands{1, 2, 4};
  std::size_t repetitions = 20;
  GeneratorParams generator;  // total_jobs and seed are overridden per instance
  SolverConfig solver;
  PipelineOptions pipeline;
  bool timing = true;
};

struct ScalingRow {
  std::size_t total_jobs = 0;  // K
  std::size_t bands = 0;       // D
  std::size_t agents = 0;      // J
  std::size_t vacants = 0;     // I
  std::size_t repetitions = 0;
  double mean_full_variables = 0.0;    // pruned unsegmented problem
  double mean_total_variables = 0.0;   // summed over bands
  double mean_largest_subproblem = 0.0;
  double mean_alpha = 0.0;
  double mean_wall_ms = 0.0;
  double mean_score_segmented = 0.0;
  double mean_score_full = 0.0;  // unsegmented pipeline with the same solver
  // Share of repetitions whose total variable count undercuts the pruned
  // unsegmented problem.
  double fraction_fewer_variables = 0.0;
};

std::vector<ScalingRow> run_scaling(const ScalingParams& params);

// Comma-separated table with a header row. The wall time column is omitted
// when `timing` is false so the output is byte-for-byte reproducible.
void write_scaling_table(std::ostream& out, const std::vector<ScalingRow>& rows,
                         bool timing);

}  // namespace jrp
