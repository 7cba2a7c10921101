#include "jrp/heuristics.hpp"

#include <algorithm>
#include <set>

#include "jrp/errors.hpp"

namespace jrp {

CandidateSet enumerate_candidates(const JrpInstance& instance,
                                  std::span<const VacantJob> vacants,
                                  std::span<const AssignedJob> agents) {
  CandidateSet out;
  for (const auto& v : vacants) {
    for (const auto& a : agents) {
      if (priority_gain(instance, v, a) <= 0.0) {
        ++out.pruned_negative_gain;
      } else if (score(instance, v, a) <= 0.0) {
        ++out.pruned_negative_score;
      } else {
        out.pairs.push_back({v.job, a.agent});
      }
    }
  }
  return out;
}

double PriorityBand::running_max() const {
  double m = 0.0;
  for (const auto& v : vacants) m = std::max(m, v.priority);
  return m;
}

std::size_t continuous_band_of(double priority, std::size_t band_count) {
  const double d = static_cast<double>(band_count);
  for (std::size_t k = 1; k < band_count; ++k) {
    if (priority > 1.0 - static_cast<double>(k) / d) return k;
  }
  return band_count;
}

namespace {

void sort_band(std::vector<VacantJob>& vacants) {
  std::sort(vacants.begin(), vacants.end(), [](const VacantJob& a, const VacantJob& b) {
    if (a.priority != b.priority) return a.priority > b.priority;
    return a.job < b.job;
  });
}

}  // namespace

SubproblemPlan build_plan(const JrpInstance& instance, std::optional<std::size_t> bands) {
  SubproblemPlan plan;
  plan.mode = instance.mode();
  if (bands && *bands < 1) throw ParameterError("band count must be >= 1");

  if (instance.mode() == PriorityMode::Discrete) {
    std::set<double, std::greater<>> levels;
    for (const auto& v : instance.vacants()) levels.insert(v.priority);
    if (bands && *bands != levels.size()) {
      throw ParameterError("discrete mode needs one band per distinct vacant priority (" +
                           std::to_string(levels.size()) + "), got " +
                           std::to_string(*bands));
    }
    std::size_t index = 1;
    for (double level : levels) {
      PriorityBand band{index++, level, level, {}};
      for (const auto& v : instance.vacants()) {
        if (v.priority == level) band.vacants.push_back(v);
      }
      sort_band(band.vacants);
      plan.bands.push_back(std::move(band));
    }
    return plan;
  }

  if (!bands) throw ParameterError("continuous mode needs an explicit band count");
  const std::size_t count = *bands;
  const double d = static_cast<double>(count);
  for (std::size_t k = 1; k <= count; ++k) {
    plan.bands.push_back({k, 1.0 - static_cast<double>(k) / d,
                          1.0 - static_cast<double>(k - 1) / d, {}});
  }
  for (const auto& v : instance.vacants()) {
    plan.bands[continuous_band_of(v.priority, count) - 1].vacants.push_back(v);
  }
  for (auto& band : plan.bands) sort_band(band.vacants);
  return plan;
}

SubproblemPlan build_single_band_plan(const JrpInstance& instance) {
  SubproblemPlan plan;
  plan.mode = instance.mode();
  PriorityBand band{1, 0.0, 0.0, {}};
  band.vacants.assign(instance.vacants().begin(), instance.vacants().end());
  if (!band.vacants.empty()) {
    auto [lo, hi] = std::minmax_element(
        band.vacants.begin(), band.vacants.end(),
        [](const VacantJob& a, const VacantJob& b) { return a.priority < b.priority; });
    band.p_min = lo->priority;
    band.p_max = hi->priority;
  }
  sort_band(band.vacants);
  plan.bands.push_back(std::move(band));
  return plan;
}

std::vector<AssignedJob> eligible_agents(std::span<const AssignedJob> agents,
                                         const PriorityBand& band) {
  const double threshold = band.running_max();
  std::vector<AssignedJob> out;
  std::copy_if(agents.begin(), agents.end(), std::back_inserter(out),
               [threshold](const AssignedJob& a) { return a.priority < threshold; });
  return out;
}

std::vector<AssignedJob> eligible_agents(const JrpInstance& instance,
                                         const PriorityBand& band) {
  return eligible_agents(instance.assigned(), band);
}

}  // namespace jrp
