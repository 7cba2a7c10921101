#pragma once

#include <cstddef>
#include <cstdint>

#include "jrp/model.hpp"

namespace jrp {

// Random instance parameters. I = round(p K) vacant jobs and J = K - I
// assigned jobs, one agent per assigned job.
struct GeneratorParams {
  std::size_t total_jobs = 10;     // K
  double vacancy_fraction = 0.3;   // p, in (0, 1)
  std::size_t levels = 3;          // discrete priority levels
  PriorityMode mode = PriorityMode::Continuous;
  // Historical counts are drawn uniformly from [min, max]; an agent's count
  // with its own job is at least 1.
  std::uint64_t affinity_count_min = 0;
  std::uint64_t affinity_count_max = 5;
  Weights weights{1.0, 1.0};
  std::uint64_t seed = 1;

  std::size_t vacant_count() const;
  std::size_t assigned_count() const { return total_jobs - vacant_count(); }

  // Throws ParameterError.
  void validate() const;
};

// Deterministic in `params`. Continuous priorities are uniform on (0, 1];
// discrete priorities are drawn from {1/L, 2/L, ..., 1} for L levels.
JrpInstance generate_instance(const GeneratorParams& params);

}  // namespace jrp
