#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "jrp/model.hpp"

namespace jrp {

// One candidate reassignment: move `agent` from its current job to `vacant`.
// Each such pair is one binary variable x_ij.
struct Move {
  JobId vacant;
  AgentId agent;
  friend auto operator<=>(const Move&, const Move&) = default;
};

using Bits = std::vector<std::uint8_t>;

// Dense index over (vacant, agent) pairs.
class VariableMap {
 public:
  VariableMap() = default;
  explicit VariableMap(std::span<const Move> pairs);

  // Throws InputError on a duplicate pair.
  std::size_t add(const Move& pair);

  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  const Move& at(std::size_t index) const { return pairs_.at(index); }
  std::span<const Move> pairs() const { return pairs_; }
  std::optional<std::size_t> index_of(const Move& pair) const;

 private:
  std::vector<Move> pairs_;
  std::map<Move, std::size_t> index_;
};

// E(x) = offset + sum_a linear[a] x_a + sum_{a<b} quadratic[a,b] x_a x_b.
//
// A problem built by build_qubo() also carries the variable map and the two
// penalty weights; a generic problem may leave the map empty.
class QuboProblem {
 public:
  using Coupling = std::pair<std::size_t, std::size_t>;

  QuboProblem() = default;
  explicit QuboProblem(std::size_t size);

  std::size_t size() const { return linear_.size(); }

  void add_offset(double value) { offset_ += value; }
  void add_linear(std::size_t a, double value);
  // Accumulates into the (min(a,b), max(a,b)) entry. a == b is rejected: use
  // add_linear, since x^2 = x for binary variables.
  void add_quadratic(std::size_t a, std::size_t b, double value);

  double offset() const { return offset_; }
  std::span<const double> linear() const { return linear_; }
  const std::map<Coupling, double>& quadratic() const { return quadratic_; }

  const VariableMap& variables() const { return varmap_; }
  void set_variables(VariableMap varmap);

  double lambda_row() const { return lambda_row_; }
  double lambda_column() const { return lambda_column_; }
  void set_penalties(double lambda_row, double lambda_column);

  // Largest absolute linear or quadratic coefficient; 0 for an empty problem.
  double max_coefficient() const;

 private:
  std::vector<double> linear_;
  std::map<Coupling, double> quadratic_;
  double offset_ = 0.0;
  VariableMap varmap_;
  double lambda_row_ = 0.0;
  double lambda_column_ = 0.0;
};

// Spin form: E(s) = offset + sum_a h[a] s_a + sum_{a<b} J[a,b] s_a s_b,
// with s = 1 - 2x (x = 0 maps to s = +1).
struct IsingProblem {
  std::vector<double> h;
  std::map<QuboProblem::Coupling, double> couplings;
  double offset = 0.0;

  std::size_t size() const { return h.size(); }
};

struct Solution {
  Bits bits;
  double energy = 0.0;
  std::vector<Move> moves;
};

// The penalty weight used when none is given: max(max S_ij, 0) + 1. A second
// set bit in a row or column raises that penalty by at least 2λ, which exceeds
// any single score.
double default_penalty(const JrpInstance& instance, std::span<const Move> variables,
                       std::span<const AssignedJob> agents);

// Builds
//   H = -sum S_ij x_ij + λ1 sum_i (sum_j x_ij - 1/2)^2 + λ2 sum_j (sum_i x_ij - 1/2)^2
// over the given variables. Rows and columns without any variable get no
// penalty term. `agents` supplies the current job of every agent referenced by
// `variables`; the one-argument overload uses the instance's initial
// assignment.
QuboProblem build_qubo(const JrpInstance& instance, std::span<const Move> variables,
                       std::span<const AssignedJob> agents, double lambda_row,
                       double lambda_column);
QuboProblem build_qubo(const JrpInstance& instance, std::span<const Move> variables,
                       double lambda_row, double lambda_column);

// Throws InputError if bits.size() != problem.size().
double energy(const QuboProblem& problem, std::span<const std::uint8_t> bits);

double ising_energy(const IsingProblem& problem, std::span<const int> spins);
IsingProblem to_ising(const QuboProblem& problem);

std::vector<int> spins_from_bits(std::span<const std::uint8_t> bits);

// Maps set bits back to moves. Feasibility is not checked; a problem without
// a variable map yields no moves.
Solution decode(const QuboProblem& problem, std::span<const std::uint8_t> bits);

// Plain coefficient file: header "N offset", then "a a value" for every
// linear term and "a b value" (a < b) for every quadratic term.
void write_coefficients(std::ostream& out, const QuboProblem& problem);
QuboProblem read_coefficients(std::istream& in);

}  // namespace jrp
