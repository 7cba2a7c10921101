#include "jrp/generator.hpp"

#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include "jrp/errors.hpp"

namespace jrp {

std::size_t GeneratorParams::vacant_count() const {
  return static_cast<std::size_t>(std::llround(vacancy_fraction * static_cast<double>(total_jobs)));
}

void GeneratorParams::validate() const {
  if (!(vacancy_fraction > 0.0 && vacancy_fraction < 1.0)) {
    throw ParameterError("vacancy fraction must lie in (0, 1)");
  }
  if (total_jobs < 1) throw ParameterError("total job count must be >= 1");
  if (levels < 1) throw ParameterError("priority levels must be >= 1");
  if (affinity_count_max < 1) throw ParameterError("affinity count max must be >= 1");
  if (affinity_count_min > affinity_count_max) {
    throw ParameterError("affinity count min exceeds max");
  }
  if (!(weights.priority > 0.0) || !(weights.affinity > 0.0)) {
    throw ParameterError("weights must be > 0");
  }
}

namespace {

std::string label(char prefix, std::size_t n, std::size_t total) {
  std::ostringstream s;
  s << prefix << std::setw(static_cast<int>(std::to_string(total).size())) << std::setfill('0')
    << n;
  return s.str();
}

}  // namespace

JrpInstance generate_instance(const GeneratorParams& params) {
  params.validate();
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> level(1, params.levels);

  auto draw_priority = [&]() {
    if (params.mode == PriorityMode::Discrete) {
      return static_cast<double>(level(rng)) / static_cast<double>(params.levels);
    }
    return 1.0 - unit(rng);
  };

  const std::size_t vacant_total = params.vacant_count();
  const std::size_t assigned_total = params.assigned_count();

  std::vector<AssignedJob> assigned;
  for (std::size_t n = 1; n <= assigned_total; ++n) {
    assigned.push_back({JobId{label('a', n, assigned_total)},
                        AgentId{label('w', n, assigned_total)}, draw_priority()});
  }
  std::vector<VacantJob> vacants;
  for (std::size_t n = 1; n <= vacant_total; ++n) {
    vacants.push_back({JobId{label('v', n, vacant_total)}, draw_priority()});
  }

  std::uniform_int_distribution<std::uint64_t> any_count(params.affinity_count_min,
                                                         params.affinity_count_max);
  std::uniform_int_distribution<std::uint64_t> own_count(
      std::max<std::uint64_t>(1, params.affinity_count_min), params.affinity_count_max);

  AffinityTable table;
  auto record = [&](const JobId& job, const AgentId& agent, std::uint64_t count) {
    if (count > 0) table.set_count(job, agent, count);
  };
  for (const auto& worker : assigned) {
    for (const auto& job : assigned) {
      const bool own = job.job == worker.job;
      record(job.job, worker.agent, own ? own_count(rng) : any_count(rng));
    }
    for (const auto& job : vacants) record(job.job, worker.agent, any_count(rng));
  }

  return JrpInstance(std::move(assigned), std::move(vacants), std::move(table),
                     params.weights, params.mode);
}

}  // namespace jrp
