#include "jrp/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "jrp/errors.hpp"

namespace jrp {

VariableMap::VariableMap(std::span<const Move> pairs) {
  for (const auto& p : pairs) add(p);
}

std::size_t VariableMap::add(const Move& pair) {
  const std::size_t index = pairs_.size();
  if (!index_.emplace(pair, index).second) {
    throw InputError("duplicate variable (" + pair.vacant.value + ", " +
                     pair.agent.value + ")");
  }
  pairs_.push_back(pair);
  return index;
}

std::optional<std::size_t> VariableMap::index_of(const Move& pair) const {
  auto it = index_.find(pair);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

QuboProblem::QuboProblem(std::size_t size) : linear_(size, 0.0) {}

void QuboProblem::add_linear(std::size_t a, double value) {
  if (a >= size()) throw InputError("variable index out of range");
  linear_[a] += value;
}

void QuboProblem::add_quadratic(std::size_t a, std::size_t b, double value) {
  if (a >= size() || b >= size()) throw InputError("variable index out of range");
  if (a == b) throw InputError("quadratic term on the diagonal; use add_linear");
  if (a > b) std::swap(a, b);
  quadratic_[{a, b}] += value;
}

void QuboProblem::set_variables(VariableMap varmap) {
  if (varmap.size() != size()) {
    throw InputError("variable map size does not match problem size");
  }
  varmap_ = std::move(varmap);
}

void QuboProblem::set_penalties(double lambda_row, double lambda_column) {
  lambda_row_ = lambda_row;
  lambda_column_ = lambda_column;
}

double QuboProblem::max_coefficient() const {
  double m = 0.0;
  for (double v : linear_) m = std::max(m, std::abs(v));
  for (const auto& [key, v] : quadratic_) m = std::max(m, std::abs(v));
  return m;
}

namespace {

std::unordered_map<AgentId, const AssignedJob*> index_agents(
    std::span<const AssignedJob> agents) {
  std::unordered_map<AgentId, const AssignedJob*> by_agent;
  for (const auto& a : agents) by_agent.emplace(a.agent, &a);
  return by_agent;
}

double pair_score(const JrpInstance& instance,
                  const std::unordered_map<AgentId, const AssignedJob*>& by_agent,
                  const Move& move) {
  auto it = by_agent.find(move.agent);
  if (it == by_agent.end()) {
    throw LookupError("agent '" + move.agent.value + "' has no current job");
  }
  const VacantJob vacant{move.vacant, instance.job_priority(move.vacant)};
  return score(instance, vacant, *it->second);
}

// Adds lambda * (sum_{a in group} x_a - 1/2)^2 with x^2 = x. The linear part
// cancels: lambda * (sum x_a + 2 sum_{a<b} x_a x_b - sum x_a + 1/4).
void add_at_most_one(QuboProblem& problem, const std::vector<std::size_t>& group,
                     double lambda) {
  problem.add_offset(0.25 * lambda);
  for (std::size_t p = 0; p < group.size(); ++p) {
    for (std::size_t q = p + 1; q < group.size(); ++q) {
      problem.add_quadratic(group[p], group[q], 2.0 * lambda);
    }
  }
}

}  // namespace

double default_penalty(const JrpInstance& instance, std::span<const Move> variables,
                       std::span<const AssignedJob> agents) {
  const auto by_agent = index_agents(agents);
  double best = 0.0;
  for (const auto& m : variables) best = std::max(best, pair_score(instance, by_agent, m));
  return best + 1.0;
}

QuboProblem build_qubo(const JrpInstance& instance, std::span<const Move> variables,
                       std::span<const AssignedJob> agents, double lambda_row,
                       double lambda_column) {
  if (!(lambda_row > 0.0) || !std::isfinite(lambda_row)) {
    throw ParameterError("row penalty weight must be a finite value > 0");
  }
  if (!(lambda_column > 0.0) || !std::isfinite(lambda_column)) {
    throw ParameterError("column penalty weight must be a finite value > 0");
  }

  VariableMap varmap(variables);
  QuboProblem problem(varmap.size());
  const auto by_agent = index_agents(agents);

  // Ordered maps keep the penalty expansion order independent of hashing.
  std::map<JobId, std::vector<std::size_t>> rows;
  std::map<AgentId, std::vector<std::size_t>> columns;
  for (std::size_t a = 0; a < varmap.size(); ++a) {
    const Move& m = varmap.at(a);
    problem.add_linear(a, -pair_score(instance, by_agent, m));
    rows[m.vacant].push_back(a);
    columns[m.agent].push_back(a);
  }
  for (const auto& [vacant, group] : rows) add_at_most_one(problem, group, lambda_row);
  for (const auto& [agent, group] : columns) add_at_most_one(problem, group, lambda_column);

  problem.set_variables(std::move(varmap));
  problem.set_penalties(lambda_row, lambda_column);
  return problem;
}

QuboProblem build_qubo(const JrpInstance& instance, std::span<const Move> variables,
                       double lambda_row, double lambda_column) {
  return build_qubo(instance, variables, instance.assigned(), lambda_row, lambda_column);
}

double energy(const QuboProblem& problem, std::span<const std::uint8_t> bits) {
  if (bits.size() != problem.size()) {
    throw InputError("bit vector length " + std::to_string(bits.size()) +
                     " does not match problem size " + std::to_string(problem.size()));
  }
  double e = problem.offset();
  const auto linear = problem.linear();
  for (std::size_t a = 0; a < bits.size(); ++a) {
    if (bits[a]) e += linear[a];
  }
  for (const auto& [key, v] : problem.quadratic()) {
    if (bits[key.first] && bits[key.second]) e += v;
  }
  return e;
}

IsingProblem to_ising(const QuboProblem& problem) {
  IsingProblem ising;
  ising.h.assign(problem.size(), 0.0);
  ising.offset = problem.offset();
  // x = (1 - s) / 2
  const auto linear = problem.linear();
  for (std::size_t a = 0; a < linear.size(); ++a) {
    ising.offset += linear[a] / 2.0;
    ising.h[a] -= linear[a] / 2.0;
  }
  for (const auto& [key, v] : problem.quadratic()) {
    const double quarter = v / 4.0;
    ising.offset += quarter;
    ising.h[key.first] -= quarter;
    ising.h[key.second] -= quarter;
    ising.couplings[key] += quarter;
  }
  return ising;
}

double ising_energy(const IsingProblem& problem, std::span<const int> spins) {
  if (spins.size() != problem.size()) {
    throw InputError("spin vector length does not match problem size");
  }
  double e = problem.offset;
  for (std::size_t a = 0; a < spins.size(); ++a) e += problem.h[a] * spins[a];
  for (const auto& [key, v] : problem.couplings) {
    e += v * spins[key.first] * spins[key.second];
  }
  return e;
}

std::vector<int> spins_from_bits(std::span<const std::uint8_t> bits) {
  std::vector<int> spins(bits.size());
  std::transform(bits.begin(), bits.end(), spins.begin(),
                 [](std::uint8_t b) { return b ? -1 : 1; });
  return spins;
}

Solution decode(const QuboProblem& problem, std::span<const std::uint8_t> bits) {
  Solution solution;
  solution.energy = energy(problem, bits);
  solution.bits.assign(bits.begin(), bits.end());
  const auto& varmap = problem.variables();
  // Generic problems without a variable map decode to bits only.
  if (varmap.size() != problem.size() || varmap.empty()) return solution;
  for (std::size_t a = 0; a < bits.size(); ++a) {
    if (bits[a]) solution.moves.push_back(varmap.at(a));
  }
  return solution;
}

void write_coefficients(std::ostream& out, const QuboProblem& problem) {
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  out << problem.size() << ' ' << problem.offset() << '\n';
  const auto linear = problem.linear();
  for (std::size_t a = 0; a < linear.size(); ++a) {
    out << a << ' ' << a << ' ' << linear[a] << '\n';
  }
  for (const auto& [key, v] : problem.quadratic()) {
    out << key.first << ' ' << key.second << ' ' << v << '\n';
  }
  out.precision(old_precision);
}

QuboProblem read_coefficients(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_line()) throw InputError("coefficient file: missing header line");
  std::size_t n = 0;
  double offset = 0.0;
  {
    std::istringstream header(line);
    if (!(header >> n >> offset)) {
      throw InputError("coefficient file line 1: expected 'N offset'");
    }
  }
  QuboProblem problem(n);
  problem.add_offset(offset);
  while (next_line()) {
    std::istringstream row(line);
    std::size_t a = 0, b = 0;
    double v = 0.0;
    const std::string where = "coefficient file line " + std::to_string(line_no);
    if (!(row >> a >> b >> v)) throw InputError(where + ": expected 'a b value'");
    if (a >= n || b >= n) throw InputError(where + ": index out of range");
    if (a == b) {
      problem.add_linear(a, v);
    } else if (a < b) {
      problem.add_quadratic(a, b, v);
    } else {
      throw InputError(where + ": quadratic terms must satisfy a < b");
    }
  }
  return problem;
}

}  // namespace jrp
