#include "jrp/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cassert>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "jrp/errors.hpp"

namespace jrp {

void SolverConfig::validate() const {
  if (sweeps < 1) throw ParameterError("sweeps must be >= 1");
  if (restarts < 1) throw ParameterError("restarts must be >= 1");
  if (!(temp_final > 0.0)) throw ParameterError("final temperature must be > 0");
  if (temp_initial && !(*temp_initial > temp_final)) {
    throw ParameterError("initial temperature must exceed the final temperature");
  }
  if (threads < 1) throw ParameterError("threads must be >= 1");
}

std::string to_string(SolverKind kind) {
  return kind == SolverKind::Exact ? "exact" : "anneal";
}

namespace {

// Compressed neighbour lists of the upper-triangular coupling map, stored in
// both directions.
struct Adjacency {
  std::vector<std::size_t> start;
  std::vector<std::size_t> neighbour;
  std::vector<double> weight;

  explicit Adjacency(const QuboProblem& problem) {
    const std::size_t n = problem.size();
    std::vector<std::size_t> degree(n, 0);
    for (const auto& [key, v] : problem.quadratic()) {
      ++degree[key.first];
      ++degree[key.second];
    }
    start.assign(n + 1, 0);
    for (std::size_t a = 0; a < n; ++a) start[a + 1] = start[a] + degree[a];
    neighbour.resize(start[n]);
    weight.resize(start[n]);
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (const auto& [key, v] : problem.quadratic()) {
      neighbour[fill[key.first]] = key.second;
      weight[fill[key.first]++] = v;
      neighbour[fill[key.second]] = key.first;
      weight[fill[key.second]++] = v;
    }
  }
};

// Local fields f_a = linear_a + sum_b q_ab x_b, so flipping a changes the
// energy by (1 - 2 x_a) f_a.
class FlipState {
 public:
  FlipState(const QuboProblem& problem, const Adjacency& adj, Bits bits)
      : adj_(adj), bits_(std::move(bits)), field_(problem.linear().begin(),
                                                   problem.linear().end()) {
    for (std::size_t a = 0; a < bits_.size(); ++a) {
      if (bits_[a]) shift_neighbours(a, 1.0);
    }
    energy_ = jrp::energy(problem, bits_);
  }

  double delta(std::size_t a) const { return bits_[a] ? -field_[a] : field_[a]; }

  void flip(std::size_t a) {
    energy_ += delta(a);
    bits_[a] ^= 1;
    shift_neighbours(a, bits_[a] ? 1.0 : -1.0);
  }

  double energy() const { return energy_; }
  void resync(const QuboProblem& problem) { energy_ = jrp::energy(problem, bits_); }
  const Bits& bits() const { return bits_; }

 private:
  void shift_neighbours(std::size_t a, double sign) {
    for (std::size_t k = adj_.start[a]; k < adj_.start[a + 1]; ++k) {
      field_[adj_.neighbour[k]] += sign * adj_.weight[k];
    }
  }

  const Adjacency& adj_;
  Bits bits_;
  std::vector<double> field_;
  double energy_ = 0.0;
};

double magnitude(const QuboProblem& problem) {
  double m = std::abs(problem.offset());
  for (double v : problem.linear()) m += std::abs(v);
  for (const auto& [key, v] : problem.quadratic()) m += std::abs(v);
  return std::max(m, 1.0);
}

}  // namespace

SolveResult solve_exact(const QuboProblem& problem, std::size_t max_exact_vars) {
  const std::size_t n = problem.size();
  if (n > max_exact_vars || n >= 63) {
    throw CapacityError("exact search over " + std::to_string(n) +
                        " variables exceeds the limit of " +
                        std::to_string(std::min<std::size_t>(max_exact_vars, 62)));
  }

  SolveResult result;
  const Adjacency adj(problem);
  FlipState state(problem, adj, Bits(n, 0));
  const double tie = 1e-10 * magnitude(problem);

  Bits best_bits = state.bits();
  double best = state.energy();
  const std::uint64_t total = std::uint64_t{1} << n;
  result.evaluations = total;

  // Gray-code walk: step k flips the lowest set bit of k.
  for (std::uint64_t k = 1; k < total; ++k) {
    state.flip(static_cast<std::size_t>(std::countr_zero(k)));
    if ((k & 0xFFFF) == 0) state.resync(problem);
    const double e = state.energy();
    if (e < best - tie) {
      best = energy(problem, state.bits());
      best_bits = state.bits();
    } else if (e <= best + tie && state.bits() < best_bits) {
      best = energy(problem, state.bits());
      best_bits = state.bits();
    }
  }

  result.best = decode(problem, best_bits);
  result.energy_trace = {result.best.energy};
  return result;
}

namespace {

struct RestartOutcome {
  Bits bits;
  double energy = 0.0;
  std::uint64_t evaluations = 0;
};

RestartOutcome anneal_once(const QuboProblem& problem, const Adjacency& adj,
                           const SolverConfig& config, double t_initial,
                           std::size_t restart) {
  const std::size_t n = problem.size();
  std::seed_seq seq{static_cast<std::uint32_t>(config.seed),
                    static_cast<std::uint32_t>(config.seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  Bits start(n);
  for (auto& b : start) b = static_cast<std::uint8_t>(rng() & 1U);
  FlipState state(problem, adj, std::move(start));

  RestartOutcome out{state.bits(), state.energy(), 0};
  const double ratio =
      config.sweeps > 1
          ? std::pow(config.temp_final / t_initial, 1.0 / static_cast<double>(config.sweeps - 1))
          : 1.0;
  double temperature = config.sweeps > 1 ? t_initial : config.temp_final;

  for (std::size_t sweep = 0; sweep < config.sweeps; ++sweep) {
    for (std::size_t a = 0; a < n; ++a) {
      const double d = state.delta(a);
      ++out.evaluations;
      if (d <= 0.0 || uniform(rng) < std::exp(-d / temperature)) {
        state.flip(a);
        if (state.energy() < out.energy) {
          out.energy = state.energy();
          out.bits = state.bits();
        }
      }
    }
    assert(std::abs(state.energy() - energy(problem, state.bits())) <=
           1e-9 * magnitude(problem));
    temperature *= ratio;
  }

  out.energy = energy(problem, out.bits);
  return out;
}

}  // namespace

SolveResult solve_anneal(const QuboProblem& problem, const SolverConfig& config) {
  config.validate();
  SolveResult result;
  if (problem.size() == 0) {
    result.best = decode(problem, Bits{});
    result.energy_trace = {result.best.energy};
    return result;
  }

  const Adjacency adj(problem);
  double t_initial = config.temp_initial.value_or(problem.max_coefficient());
  if (!(t_initial > config.temp_final)) t_initial = config.temp_final;

  std::vector<RestartOutcome> outcomes(config.restarts);
  const std::size_t workers = std::min(config.threads, config.restarts);
  if (workers <= 1) {
    for (std::size_t r = 0; r < config.restarts; ++r) {
      outcomes[r] = anneal_once(problem, adj, config, t_initial, r);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t r = next++; r < config.restarts; r = next++) {
          outcomes[r] = anneal_once(problem, adj, config, t_initial, r);
        }
      });
    }
  }

  std::size_t winner = 0;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    result.energy_trace.push_back(outcomes[r].energy);
    result.evaluations += outcomes[r].evaluations;
    if (outcomes[r].energy < outcomes[winner].energy) winner = r;
  }
  result.best = decode(problem, outcomes[winner].bits);
  return result;
}

SolveResult solve(const QuboProblem& problem, const SolverConfig& config) {
  if (config.kind == SolverKind::Exact) return solve_exact(problem, config.max_exact_vars);
  return solve_anneal(problem, config);
}

}  // namespace jrp
