#include "jrp/model.hpp"

#include <cmath>

#include "jrp/errors.hpp"

namespace jrp {

void AffinityTable::set_count(const JobId& job, const AgentId& agent,
                              std::uint64_t count) {
  counts_[{job, agent}] = count;
}

std::uint64_t AffinityTable::count(const JobId& job, const AgentId& agent) const {
  auto it = counts_.find({job, agent});
  return it == counts_.end() ? 0 : it->second;
}

double AffinityTable::affinity(const JobId& job, const AgentId& agent) const {
  return affinity_from_count(count(job, agent));
}

double affinity_from_count(std::uint64_t count) {
  return 1.0 - 1.0 / (1.0 + static_cast<double>(count));
}

double affinity(const AffinityTable& table, const JobId& job, const AgentId& agent) {
  return table.affinity(job, agent);
}

namespace {

void check_priority(double priority, PriorityMode mode, const std::string& where) {
  if (!std::isfinite(priority) || priority <= 0.0) {
    throw InputError(where + ".priority: must be a finite value > 0");
  }
  if (mode == PriorityMode::Continuous && priority > 1.0) {
    throw InputError(where + ".priority: must be <= 1 in continuous mode");
  }
}

}  // namespace

JrpInstance::JrpInstance(std::vector<AssignedJob> assigned,
                         std::vector<VacantJob> vacants, AffinityTable affinities,
                         Weights weights, PriorityMode mode)
    : assigned_(std::move(assigned)),
      vacants_(std::move(vacants)),
      affinities_(std::move(affinities)),
      weights_(weights),
      mode_(mode) {
  if (!std::isfinite(weights_.priority) || weights_.priority <= 0.0) {
    throw InputError("weights.c_priority: must be a finite value > 0");
  }
  if (!std::isfinite(weights_.affinity) || weights_.affinity <= 0.0) {
    throw InputError("weights.c_affinity: must be a finite value > 0");
  }

  auto add_job = [this](const JobId& job, double priority, const std::string& where) {
    if (job.value.empty()) throw InputError(where + ".job: id must be non-empty");
    if (!job_priority_.emplace(job, priority).second) {
      throw InputError(where + ".job: duplicate job id '" + job.value + "'");
    }
  };

  for (std::size_t n = 0; n < assigned_.size(); ++n) {
    const auto& a = assigned_[n];
    const std::string where = "assigned[" + std::to_string(n) + "]";
    check_priority(a.priority, mode_, where);
    add_job(a.job, a.priority, where);
    if (a.agent.value.empty()) throw InputError(where + ".agent: id must be non-empty");
    if (!agent_home_.emplace(a.agent, a.job).second) {
      throw InputError(where + ".agent: duplicate agent id '" + a.agent.value + "'");
    }
  }
  for (std::size_t n = 0; n < vacants_.size(); ++n) {
    const std::string where = "vacants[" + std::to_string(n) + "]";
    check_priority(vacants_[n].priority, mode_, where);
    add_job(vacants_[n].job, vacants_[n].priority, where);
  }

  for (const auto& [key, count] : affinities_.counts()) {
    const auto& [job, agent] = key;
    if (!has_job(job)) {
      throw InputError("affinity_counts: unknown job '" + job.value + "'");
    }
    if (!has_agent(agent)) {
      throw InputError("affinity_counts: unknown agent '" + agent.value + "'");
    }
  }
  for (std::size_t n = 0; n < assigned_.size(); ++n) {
    const auto& a = assigned_[n];
    if (affinities_.count(a.job, a.agent) < 1) {
      throw InputError("assigned[" + std::to_string(n) + "]: agent '" + a.agent.value +
                       "' needs an affinity count >= 1 with its current job '" +
                       a.job.value + "'");
    }
  }
}

double JrpInstance::job_priority(const JobId& job) const {
  auto it = job_priority_.find(job);
  if (it == job_priority_.end()) throw LookupError("unknown job '" + job.value + "'");
  return it->second;
}

double priority_gain(const JrpInstance& instance, const VacantJob& vacant,
                     const AssignedJob& agent_job) {
  if (!instance.has_job(vacant.job)) {
    throw LookupError("unknown job '" + vacant.job.value + "'");
  }
  if (!instance.has_job(agent_job.job)) {
    throw LookupError("unknown job '" + agent_job.job.value + "'");
  }
  if (!instance.has_agent(agent_job.agent)) {
    throw LookupError("unknown agent '" + agent_job.agent.value + "'");
  }
  return vacant.priority - agent_job.priority;
}

double score(const JrpInstance& instance, const VacantJob& vacant,
             const AssignedJob& agent_job) {
  const double gain = priority_gain(instance, vacant, agent_job);
  const auto& table = instance.affinities();
  const double affinity_gain = table.affinity(vacant.job, agent_job.agent) -
                               table.affinity(agent_job.job, agent_job.agent);
  const auto& w = instance.weights();
  return w.priority * gain + w.affinity * affinity_gain;
}

std::string to_string(PriorityMode mode) {
  return mode == PriorityMode::Discrete ? "discrete" : "continuous";
}

std::optional<PriorityMode> parse_priority_mode(std::string_view text) {
  if (text == "discrete") return PriorityMode::Discrete;
  if (text == "continuous") return PriorityMode::Continuous;
  return std::nullopt;
}

}  // namespace jrp
