// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "jrp/generator.hpp"
#include "jrp/heuristics.hpp"
#include "jrp/instance_file.hpp"
#include "jrp/pipeline.hpp"
#include "jrp/qubo.hpp"
#include "jrp/scaling_benchmark.hpp"
#include "jrp/solvers.hpp"
#include "oracles.hpp"

namespace {

using namespace jrp;
using Clock = std::chrono::steady_clock;

// Tolerances and limits.
constexpr double kEnergyRelTol = 1e-9;
constexpr double kIsingTol = 1e-9;
constexpr double kAc1Seconds = 10.0;
constexpr double kAc4Seconds = 60.0;
constexpr double kAc4MinHitRate = 0.95;
constexpr double kAc8Seconds = 300.0;
constexpr double kAc8SizeBand = 0.20;
constexpr double kAc9MinRatio = 0.80;

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Verdict ac1() {
  std::mt19937_64 rng(101);
  const auto start = Clock::now();
  double worst = 0.0;
  std::size_t checks = 0;
  bool ok = true;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto mode = trial % 2 ? PriorityMode::Discrete : PriorityMode::Continuous;
    const auto inst = testing::random_instance(rng, 5, 4, mode, 4, {1.0, 1.5});
    const auto vars = testing::random_variables(rng, inst, 20);
    const auto agents = testing::agents_of(inst);
    std::uniform_real_distribution<double> lam(0.5, 5.0);
    const double l1 = lam(rng), l2 = lam(rng);
    const auto q = build_qubo(inst, vars, l1, l2);
    std::bernoulli_distribution coin(0.5);
    for (int s = 0; s < 4; ++s) {
      Bits bits(vars.size());
      for (auto& b : bits) b = coin(rng);
      const double a = energy(q, bits);
      const double b = testing::direct_hamiltonian(inst, agents, vars, bits, l1, l2);
      const double rel = std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
      worst = std::max(worst, rel);
      ok = ok && rel <= kEnergyRelTol;
      ++checks;
    }
  }
  const double t = seconds_since(start);
  return {ok && t < kAc1Seconds,
          fmt("%zu evaluations on 1000 instances, worst rel err %.2e, %.2fs", checks, worst, t)};
}

Verdict ac2() {
  std::mt19937_64 rng(202);
  std::size_t violations = 0, minimizers = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = testing::random_instance(rng, 5, 4);
    const auto vars = testing::random_variables(rng, inst, 16);
    const auto agents = testing::agents_of(inst);
    const double lambda = default_penalty(inst, vars, agents);
    const auto brute = testing::brute_force(vars.size(), [&](const Bits& b) {
      return testing::direct_hamiltonian(inst, agents, vars, b, lambda, lambda);
    });
    for (const auto& m : brute.minimizers) {
      ++minimizers;
      if (!testing::at_most_one_per_line(vars, m)) ++violations;
    }
  }
  return {violations == 0,
          fmt("50 problems, %zu minimizers, %zu violations", minimizers, violations)};
}

Verdict ac3() {
  std::mt19937_64 rng(303);
  double worst = 0.0;
  std::size_t states = 0;
  for (std::size_t n = 1; n <= 12; ++n) {
    for (int rep = 0; rep < 3; ++rep) {
      const auto inst = testing::random_instance(rng, 4, 3);
      auto vars = testing::all_pairs(inst);
      std::shuffle(vars.begin(), vars.end(), rng);
      vars.resize(n);
      const double lambda = default_penalty(inst, vars, inst.assigned());
      const auto q = build_qubo(inst, vars, lambda, lambda);
      const auto ising = to_ising(q);
      for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
        const auto bits = testing::bits_of(code, n);
        std::vector<int> spins(n);
        for (std::size_t a = 0; a < n; ++a) spins[a] = 1 - 2 * bits[a];
        worst = std::max(worst, std::abs(energy(q, bits) - ising_energy(ising, spins)));
        ++states;
      }
    }
  }
  return {worst <= kIsingTol, fmt("%zu states, N = 1..12, max abs diff %.2e", states, worst)};
}

Verdict ac4() {
  std::mt19937_64 rng(404);
  const auto start = Clock::now();
  int hits = 0, problems = 0;
  std::size_t largest = 0;
  while (problems < 50) {
    const auto inst = testing::random_instance(rng, 6, 4);
    const auto pruned = build_pruned_problem(inst);
    const auto n = pruned.qubo.size();
    if (n < 2 || n > 16) continue;
    largest = std::max(largest, n);
    SolverConfig config;
    config.seed = static_cast<std::uint64_t>(problems);
    const double optimum = solve_exact(pruned.qubo).best.energy;
    const double found = solve_anneal(pruned.qubo, config).best.energy;
    if (testing::near(found, optimum, kEnergyRelTol)) ++hits;
    ++problems;
  }
  const double t = seconds_since(start);
  const double rate = static_cast<double>(hits) / problems;
  return {rate >= kAc4MinHitRate && t < kAc4Seconds,
          fmt("%d/%d optimal (N <= %zu), %.2fs", hits, problems, largest, t)};
}

Verdict ac5() {
  const auto inst = load_instance(JRP_DATA_DIR "/two_band_example.json");
  PipelineOptions opts;
  opts.carry_unfilled = false;
  SolverConfig exact;
  exact.kind = SolverKind::Exact;
  const std::set<std::string> want{"1:w1:a1:v1", "1:w3:a3:v3", "2:w2:a2:v4", "2:w4:a4:a3"};
  auto moves_of = [](const PipelineReport& r) {
    std::set<std::string> out;
    for (const auto& m : r.moves) {
      out.insert(std::to_string(m.move.band) + ":" + m.move.agent.value + ":" +
                 m.move.vacated.value + ":" + m.move.vacant.value);
    }
    return out;
  };
  const auto by_exact = run(inst, std::nullopt, exact, opts);
  const auto by_anneal = run(inst, std::nullopt, SolverConfig{}, opts);
  const bool grids = by_exact.per_band.size() == 2 && by_exact.per_band[0].grid_size() == 12 &&
                     by_exact.per_band[1].grid_size() == 6 &&
                     by_exact.per_band[0].agents_considered == 4 &&
                     by_exact.per_band[1].agents_considered == 2;
  const bool dropped = by_exact.dropped.size() == 1 && by_exact.dropped[0].job.value == "a1";
  const bool moves = moves_of(by_exact) == want && moves_of(by_anneal) == want;
  return {grids && dropped && moves,
          fmt("grids %zux%zu=%zu and %zux%zu=%zu, %zu moves, a1 %s", 
              by_exact.per_band[0].agents_considered, by_exact.per_band[0].vacants_considered,
              by_exact.per_band[0].grid_size(), by_exact.per_band[1].agents_considered,
              by_exact.per_band[1].vacants_considered, by_exact.per_band[1].grid_size(),
              by_exact.moves.size(), dropped ? "dropped" : "not dropped")};
}

Verdict ac6() {
  std::mt19937_64 rng(606);
  int same = 0;
  for (int trial = 0; trial < 25; ++trial) {
    const auto inst = testing::random_instance(rng, 6, 4);
    SolverConfig config;
    config.seed = 7 + static_cast<std::uint64_t>(trial);
    const auto report = run(inst, build_single_band_plan(inst), config);
    const auto direct = solve_anneal(build_pruned_problem(inst).qubo, config);
    std::vector<Move> a, b = direct.best.moves;
    for (const auto& m : report.moves) a.push_back({m.move.vacant, m.move.agent});
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a == b) ++same;
  }
  return {same == 25, fmt("%d/25 identical move sets", same)};
}

Verdict ac7() {
  std::mt19937_64 rng(707);
  std::size_t instances = 0, bands = 0, moves = 0, failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto mode = trial % 2 ? PriorityMode::Discrete : PriorityMode::Continuous;
    const auto inst = testing::random_instance(rng, 7, 5, mode, 3);
    const auto plan = build_plan(inst, mode == PriorityMode::Discrete
                                           ? std::nullopt
                                           : std::optional<std::size_t>{1 + trial % 4});
    SolverConfig config;
    config.seed = static_cast<std::uint64_t>(trial);
    config.sweeps = 300;
    const bool carry = trial % 3 != 0;

    // Step the bands by hand so J can be checked after each one.
    auto state = initial_state(inst, plan);
    while (state.current_band < state.bands.size()) {
      const auto& band = state.bands[state.current_band];
      const auto agents = eligible_agents(state.assigned, band);
      const auto cand = enumerate_candidates(inst, band.vacants, agents);
      std::vector<Move> chosen;
      if (!cand.pairs.empty()) {
        const double l = default_penalty(inst, cand.pairs, agents);
        chosen = solve(build_qubo(inst, cand.pairs, agents, l, l), config).best.moves;
      }
      state = close_band(apply_moves(std::move(state), chosen), carry);
      ++bands;
      if (state.assigned.size() != inst.agent_count()) ++failures;
    }

    PipelineOptions opts;
    opts.carry_unfilled = carry;
    const auto report = run(inst, plan, config, opts);
    if (report.final_assigned.size() != inst.agent_count()) ++failures;
    for (const auto& m : report.moves) {
      const AssignedJob before{m.move.vacated, m.move.agent, inst.job_priority(m.move.vacated)};
      const double dp = inst.job_priority(m.move.vacant) - before.priority;
      const double s = testing::direct_score(inst, {m.move.vacant, m.move.agent}, before);
      if (!(dp > 0.0) || !(s > 0.0)) ++failures;
      ++moves;
    }
    ++instances;
  }
  return {failures == 0, fmt("%zu instances, %zu bands, %zu moves, %zu violations", instances,
                             bands, moves, failures)};
}

ScalingParams scaling_params() {
  ScalingParams p;
  p.total_jobs = {8, 12, 16};
  p.bands = {1, 2, 4};
  p.repetitions = 20;
  p.generator.vacancy_fraction = 0.4;
  // Every count drawn from the same range, so affinity gains are symmetric.
  p.generator.affinity_count_min = 1;
  p.generator.affinity_count_max = 5;
  p.generator.seed = 1;
  return p;
}

Verdict ac8(std::vector<ScalingRow>& rows_out) {
  const auto params = scaling_params();
  const auto start = Clock::now();
  rows_out = run_scaling(params);
  const double t = seconds_since(start);

  bool decreasing = true, sized = true;
  std::ostringstream detail;
  for (std::size_t k : params.total_jobs) {
    std::vector<const ScalingRow*> cells;
    for (const auto& r : rows_out) {
      if (r.total_jobs == k) cells.push_back(&r);
    }
    for (std::size_t c = 1; c < cells.size(); ++c) {
      decreasing = decreasing &&
                   cells[c]->mean_largest_subproblem < cells[c - 1]->mean_largest_subproblem;
    }
    const double expected = cells[0]->agents * cells[0]->vacants / 2.0;
    const double ratio = cells[0]->mean_full_variables / expected;
    sized = sized && std::abs(ratio - 1.0) <= kAc8SizeBand;
    detail << "K=" << k << " largest";
    for (const auto* c : cells) detail << ' ' << fmt("%.2f", c->mean_largest_subproblem);
    detail << fmt(" full/(JI/2)=%.3f; ", ratio);
  }
  detail << fmt("%.1fs", t);
  return {decreasing && sized && t < kAc8Seconds, detail.str()};
}

// Best total score over matchings of the pruned pairs: DP over subsets of
// vacants, one agent at a time.
double optimum_score(const JrpInstance& inst) {
  const auto vacants = inst.vacants();
  const std::size_t n = vacants.size();
  std::vector<double> best(std::size_t{1} << n, -1.0);
  best[0] = 0.0;
  for (const auto& agent : inst.assigned()) {
    auto next = best;
    for (std::size_t mask = 0; mask < best.size(); ++mask) {
      if (best[mask] < 0.0) continue;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (std::size_t{1} << i)) continue;
        const double s = testing::direct_score(inst, {vacants[i].job, agent.agent}, agent);
        if (!(vacants[i].priority > agent.priority) || !(s > 0.0)) continue;
        auto& slot = next[mask | (std::size_t{1} << i)];
        slot = std::max(slot, best[mask] + s);
      }
    }
    best = std::move(next);
  }
  return *std::max_element(best.begin(), best.end());
}

Verdict ac9(const std::vector<ScalingRow>& rows) {
  // Same instances as criterion 8, regenerated from their seeds.
  const auto params = scaling_params();
  std::map<std::size_t, double> optimum_mean;
  for (std::size_t k : params.total_jobs) {
    double sum = 0.0;
    for (std::size_t r = 0; r < params.repetitions; ++r) {
      auto g = params.generator;
      g.total_jobs = k;
      g.seed = params.generator.seed + 1000003 * k + r;
      sum += optimum_score(generate_instance(g));
    }
    optimum_mean[k] = sum / static_cast<double>(params.repetitions);
  }
  double worst = 1.0, total_seg = 0.0, total_opt = 0.0;
  bool consistent = true;
  for (const auto& r : rows) {
    const double opt = optimum_mean[r.total_jobs];
    worst = std::min(worst, opt > 0.0 ? r.mean_score_segmented / opt : 1.0);
    total_seg += r.mean_score_segmented;
    total_opt += opt;
    // The unsegmented annealer run cannot beat the matching optimum.
    consistent = consistent && r.mean_score_full <= opt * (1.0 + 1e-9);
  }
  const double overall = total_seg / total_opt;
  return {overall >= kAc9MinRatio && consistent,
          fmt("segmented/optimum %.3f overall, worst cell %.3f", overall, worst)};
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](const char* id, const char* name, const std::function<Verdict()>& f) {
    Verdict v;
    try {
      v = f();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::cout << id << ' ' << (v.pass ? "PASS" : "FAIL") << ' ' << name << ": " << v.detail
              << std::endl;
  };
  std::vector<ScalingRow> rows;
  report("AC1", "hamiltonian fidelity", ac1);
  report("AC2", "penalty feasibility", ac2);
  report("AC3", "ising equivalence", ac3);
  report("AC4", "annealer quality", ac4);
  report("AC5", "two-band worked example", ac5);
  report("AC6", "single-band equivalence", ac6);
  report("AC7", "conservation", ac7);
  report("AC8", "scaling trend", [&] { return ac8(rows); });
  report("AC9", "solution quality floor", [&] {
    if (rows.empty()) return Verdict{false, "no scaling rows"};
    return ac9(rows);
  });
  return failed == 0 ? 0 : 1;
}
