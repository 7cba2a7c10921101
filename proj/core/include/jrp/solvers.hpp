#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "jrp/qubo.hpp"

namespace jrp {

enum class SolverKind { Exact, Anneal };

struct SolverConfig {
  SolverKind kind = SolverKind::Anneal;
  std::size_t max_exact_vars = 24;
  std::size_t sweeps = 1000;
  std::size_t restarts = 10;
  // Unset: the largest coefficient magnitude of the problem being solved.
  std::optional<double> temp_initial;
  double temp_final = 1e-3;
  std::uint64_t seed = 0;
  // Worker threads for restarts. Results do not depend on this value.
  std::size_t threads = 1;

  // Throws ParameterError on a violated invariant.
  void validate() const;
};

struct SolveResult {
  Solution best;
  std::vector<double> energy_trace;  // best energy of each restart
  std::uint64_t evaluations = 0;
};

// Exhaustive minimum over all 2^N bitstrings. Among minimizers the
// lexicographically smallest bit vector wins. Throws CapacityError when
// N > max_exact_vars.
SolveResult solve_exact(const QuboProblem& problem, std::size_t max_exact_vars = 24);

// Single-bit-flip Metropolis annealing on a geometric temperature schedule,
// restarted `config.restarts` times from random states. Each restart draws
// from its own generator seeded by (seed, restart index).
SolveResult solve_anneal(const QuboProblem& problem, const SolverConfig& config);

// Dispatches on config.kind.
SolveResult solve(const QuboProblem& problem, const SolverConfig& config);

std::string to_string(SolverKind kind);

}  // namespace jrp
