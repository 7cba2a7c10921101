#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jrp/generator.hpp"
#include "jrp/scaling_benchmark.hpp"
#include "jrp/solvers.hpp"

namespace jrp::cli {

// Process exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 2;
inline constexpr int kCapacityError = 3;
inline constexpr int kInternalError = 4;

struct SolveOptions {
  std::string instance;
  std::optional<std::size_t> bands;
  bool full = false;
  bool carry_unfilled = true;
  std::optional<double> penalty;
  SolverConfig solver;
  std::string out;  // report path; empty skips the report file
};

struct GenerateOptions {
  GeneratorParams params;
  std::string out;  // empty writes to the output stream
};

struct BenchmarkOptions {
  ScalingParams params;
  std::string out;
};

struct ExportOptions {
  std::string instance;
  std::optional<double> penalty;
  std::string out;
};

int cmd_solve(const SolveOptions& options, std::ostream& out, std::ostream& err);
int cmd_generate(const GenerateOptions& options, std::ostream& out, std::ostream& err);
int cmd_benchmark(const BenchmarkOptions& options, std::ostream& out, std::ostream& err);
int cmd_qubo_export(const ExportOptions& options, std::ostream& out, std::ostream& err);

// Parses argv and dispatches to one of the commands above.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace jrp::cli
