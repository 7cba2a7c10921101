#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace jrp {

// Opaque identifiers. Jobs and agents live in separate id spaces so a job
// can never be passed where an agent is expected.
struct JobId {
  std::string value;
  friend auto operator<=>(const JobId&, const JobId&) = default;
};

struct AgentId {
  std::string value;
  friend auto operator<=>(const AgentId&, const AgentId&) = default;
};

}  // namespace jrp

template <>
struct std::hash<jrp::JobId> {
  std::size_t operator()(const jrp::JobId& id) const noexcept {
    return std::hash<std::string>{}(id.value);
  }
};

template <>
struct std::hash<jrp::AgentId> {
  std::size_t operator()(const jrp::AgentId& id) const noexcept {
    return std::hash<std::string>{}(id.value);
  }
};

namespace jrp {

enum class PriorityMode { Discrete, Continuous };

// A job currently covered by an agent. `priority` is P^C for that job.
struct AssignedJob {
  JobId job;
  AgentId agent;
  double priority = 0.0;
  friend bool operator==(const AssignedJob&, const AssignedJob&) = default;
};

// A job without an agent. `priority` is P^V for that job.
struct VacantJob {
  JobId job;
  double priority = 0.0;
  friend bool operator==(const VacantJob&, const VacantJob&) = default;
};

// Historical assignment counts M_kj between any job k and agent j.
// Pairs that were never recorded have count zero.
class AffinityTable {
 public:
  using Key = std::pair<JobId, AgentId>;

  AffinityTable() = default;

  void set_count(const JobId& job, const AgentId& agent, std::uint64_t count);
  std::uint64_t count(const JobId& job, const AgentId& agent) const;

  // A_kj = 1 - 1/(1 + M_kj).
  double affinity(const JobId& job, const AgentId& agent) const;

  const std::map<Key, std::uint64_t>& counts() const { return counts_; }

  friend bool operator==(const AffinityTable&, const AffinityTable&) = default;

 private:
  std::map<Key, std::uint64_t> counts_;
};

// Maps a historical count to an affinity in [0, 1).
double affinity_from_count(std::uint64_t count);

double affinity(const AffinityTable& table, const JobId& job, const AgentId& agent);

struct Weights {
  double priority = 1.0;  // c^P
  double affinity = 1.0;  // c^A
  friend bool operator==(const Weights&, const Weights&) = default;
};

// Immutable, validated problem statement. The constructor throws InputError
// on any violated invariant, so every downstream module can assume
// well-formed data.
class JrpInstance {
 public:
  JrpInstance(std::vector<AssignedJob> assigned, std::vector<VacantJob> vacants,
              AffinityTable affinities, Weights weights, PriorityMode mode);

  std::span<const AssignedJob> assigned() const { return assigned_; }
  std::span<const VacantJob> vacants() const { return vacants_; }
  const AffinityTable& affinities() const { return affinities_; }
  const Weights& weights() const { return weights_; }
  PriorityMode mode() const { return mode_; }

  std::size_t agent_count() const { return assigned_.size(); }  // J
  std::size_t vacant_count() const { return vacants_.size(); }  // I
  std::size_t job_count() const { return assigned_.size() + vacants_.size(); }  // K

  bool has_job(const JobId& job) const { return job_priority_.contains(job); }
  bool has_agent(const AgentId& agent) const { return agent_home_.contains(agent); }

  // Priority of any job in the instance, vacant or assigned.
  double job_priority(const JobId& job) const;

  friend bool operator==(const JrpInstance& a, const JrpInstance& b) {
    return a.assigned_ == b.assigned_ && a.vacants_ == b.vacants_ &&
           a.affinities_ == b.affinities_ && a.weights_ == b.weights_ &&
           a.mode_ == b.mode_;
  }

 private:
  std::vector<AssignedJob> assigned_;
  std::vector<VacantJob> vacants_;
  AffinityTable affinities_;
  Weights weights_;
  PriorityMode mode_;
  std::unordered_map<JobId, double> job_priority_;
  std::unordered_map<AgentId, JobId> agent_home_;
};

// Δ^P = P^V_i - P^C_j. Throws LookupError if either job or the agent is not
// part of the instance.
double priority_gain(const JrpInstance& instance, const VacantJob& vacant,
                     const AssignedJob& agent_job);

// S_ij = c^P Δ^P_ij + c^A (A^V_ij - A^C_jj), where A^C is the agent's
// affinity with the job it currently covers.
double score(const JrpInstance& instance, const VacantJob& vacant,
             const AssignedJob& agent_job);

std::string to_string(PriorityMode mode);
std::optional<PriorityMode> parse_priority_mode(std::string_view text);

}  // namespace jrp
