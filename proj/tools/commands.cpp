#include "commands.hpp"

#include <exception>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "jrp/errors.hpp"
#include "jrp/instance_file.hpp"
#include "jrp/pipeline.hpp"
#include "jrp/qubo.hpp"

namespace jrp::cli {

namespace {

// Runs `body`, mapping library exceptions onto exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const LookupError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kCapacityError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write '" + path + "'");
  file << content;
  if (!file) throw InputError("failed writing '" + path + "'");
}

void print_summary(std::ostream& out, const JrpInstance& instance,
                   const PipelineReport& report) {
  out << "instance: J=" << instance.agent_count() << " agents, I=" << instance.vacant_count()
      << " vacants, mode=" << to_string(instance.mode()) << '\n';
  out << "band  vacants  agents  grid  variables  moves  energy\n";
  for (const auto& b : report.per_band) {
    out << std::left << std::setw(6) << b.band << std::setw(9) << b.vacants_considered
        << std::setw(8) << b.agents_considered << std::setw(6) << b.grid_size()
        << std::setw(11) << b.variables << std::setw(7) << b.moves_applied << std::right
        << b.energy << (b.repaired ? "  (repaired)" : "") << '\n';
  }
  out << "moves: " << report.moves.size() << " across " << report.per_band.size()
      << " band(s)\n";
  for (const auto& m : report.moves) {
    out << "  [band " << m.move.band << "] " << m.move.agent.value << ": "
        << m.move.vacated.value << " -> " << m.move.vacant.value << " (score " << m.score
        << ")\n";
  }
  out << "final assignment:\n";
  for (const auto& a : report.final_assigned) {
    out << "  " << a.job.value << " <- " << a.agent.value << '\n';
  }
  if (!report.unfilled.empty()) {
    out << "unfilled:";
    for (const auto& v : report.unfilled) out << ' ' << v.job.value;
    out << '\n';
  }
  if (!report.dropped.empty()) {
    out << "dropped:";
    for (const auto& v : report.dropped) out << ' ' << v.job.value;
    out << '\n';
  }
  out << "alpha estimate: " << report.alpha_estimate << '\n'
      << "total variables: " << report.total_variables << " (largest subproblem "
      << report.largest_subproblem << ")\n"
      << "total score: " << report.total_score << '\n';
}

}  // namespace

int cmd_solve(const SolveOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const JrpInstance instance = load_instance(options.instance);
    PipelineOptions pipeline{options.carry_unfilled, options.penalty};
    std::optional<std::size_t> bands = options.bands;
    if (!bands && instance.mode() == PriorityMode::Continuous) bands = 1;

    const PipelineReport report = options.full
                                      ? run_full(instance, options.solver, pipeline)
                                      : run(instance, bands, options.solver, pipeline);
    print_summary(out, instance, report);
    if (!options.out.empty()) write_file(options.out, serialize_report(report, instance));
    return kOk;
  });
}

int cmd_generate(const GenerateOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::string text = serialize_instance(generate_instance(options.params));
    if (options.out.empty()) {
      out << text;
    } else {
      write_file(options.out, text);
    }
    return kOk;
  });
}

int cmd_benchmark(const BenchmarkOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto rows = run_scaling(options.params);
    std::ostringstream table;
    write_scaling_table(table, rows, options.params.timing);
    if (options.out.empty()) {
      out << table.str();
    } else {
      write_file(options.out, table.str());
    }
    return kOk;
  });
}

int cmd_qubo_export(const ExportOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const JrpInstance instance = load_instance(options.instance);
    const PrunedProblem pruned = build_pruned_problem(instance, options.penalty);
    std::ostringstream text;
    write_coefficients(text, pruned.qubo);
    if (options.out.empty()) {
      out << text.str();
    } else {
      write_file(options.out, text.str());
    }
    return kOk;
  });
}

namespace {

void add_solver_flags(CLI::App& cmd, SolverConfig& solver, std::string& kind) {
  cmd.add_option("--solver", kind, "exact or anneal")
      ->check(CLI::IsMember({"exact", "anneal"}))
      ->capture_default_str();
  cmd.add_option("--sweeps", solver.sweeps, "annealing sweeps per restart")
      ->capture_default_str();
  cmd.add_option("--restarts", solver.restarts, "annealing restarts")->capture_default_str();
  cmd.add_option("--seed", solver.seed, "random seed")->capture_default_str();
  cmd.add_option("--threads", solver.threads, "worker threads for restarts")
      ->capture_default_str();
  cmd.add_option("--max-exact-vars", solver.max_exact_vars,
                 "largest problem the exact solver accepts")
      ->capture_default_str();
}

SolverKind solver_kind(const std::string& kind) {
  return kind == "exact" ? SolverKind::Exact : SolverKind::Anneal;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Job reassignment via QUBO subproblem decomposition", "jrp"};
  app.require_subcommand(1);

  SolveOptions solve;
  std::string solve_kind = "anneal";
  std::size_t solve_bands = 0;
  double solve_penalty = 0.0;
  bool no_carry = false;
  auto* solve_cmd = app.add_subcommand("solve", "run the banded pipeline on an instance");
  solve_cmd->add_option("--instance", solve.instance, "instance JSON file")->required();
  auto* bands_opt = solve_cmd->add_option(
      "--bands", solve_bands,
      "number of priority bands (discrete: defaults to the distinct levels; continuous: 1)");
  solve_cmd->add_flag("--full", solve.full, "solve the unsegmented problem in one band");
  solve_cmd->add_flag("--no-carry", no_carry, "do not offer unfilled vacants to later bands");
  auto* penalty_opt =
      solve_cmd->add_option("--penalty", solve_penalty, "penalty weight for both constraints");
  solve_cmd->add_option("--out", solve.out, "write the JSON report here");
  add_solver_flags(*solve_cmd, solve.solver, solve_kind);

  GenerateOptions generate;
  std::string generate_mode = "continuous";
  auto* gen_cmd = app.add_subcommand("generate", "write a random instance");
  auto& gp = generate.params;
  gen_cmd->add_option("--jobs", gp.total_jobs, "total job count K")->capture_default_str();
  gen_cmd->add_option("--vacancy-fraction", gp.vacancy_fraction, "fraction p of vacant jobs")
      ->capture_default_str();
  gen_cmd->add_option("--levels", gp.levels, "discrete priority levels")->capture_default_str();
  gen_cmd->add_option("--mode", generate_mode, "discrete or continuous")
      ->check(CLI::IsMember({"discrete", "continuous"}))
      ->capture_default_str();
  gen_cmd->add_option("--affinity-min", gp.affinity_count_min, "smallest history count")
      ->capture_default_str();
  gen_cmd->add_option("--affinity-max", gp.affinity_count_max, "largest history count")
      ->capture_default_str();
  gen_cmd->add_option("--c-priority", gp.weights.priority, "priority weight")
      ->capture_default_str();
  gen_cmd->add_option("--c-affinity", gp.weights.affinity, "affinity weight")
      ->capture_default_str();
  gen_cmd->add_option("--seed", gp.seed, "random seed")->capture_default_str();
  gen_cmd->add_option("--out", generate.out, "output path (default: stdout)");

  BenchmarkOptions bench;
  std::string bench_kind = "anneal";
  bool no_timing = false;
  auto* bench_cmd = app.add_subcommand("benchmark", "measure subproblem sizes across K and D");
  auto& bp = bench.params;
  bench_cmd->add_option("--jobs", bp.total_jobs, "comma-separated K values")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--bands", bp.bands, "comma-separated D values")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--reps", bp.repetitions, "instances per cell")->capture_default_str();
  bench_cmd->add_option("--vacancy-fraction", bp.generator.vacancy_fraction,
                        "fraction p of vacant jobs")
      ->capture_default_str();
  bench_cmd->add_option("--affinity-min", bp.generator.affinity_count_min,
                        "smallest history count")
      ->capture_default_str();
  bench_cmd->add_option("--affinity-max", bp.generator.affinity_count_max,
                        "largest history count")
      ->capture_default_str();
  bench_cmd->add_option("--instance-seed", bp.generator.seed, "base seed for instances")
      ->capture_default_str();
  bench_cmd->add_flag("--no-timing", no_timing, "omit the wall time column");
  bench_cmd->add_option("--out", bench.out, "output path (default: stdout)");
  add_solver_flags(*bench_cmd, bp.solver, bench_kind);

  ExportOptions exported;
  double export_penalty = 0.0;
  auto* export_cmd =
      app.add_subcommand("qubo-export", "write the pruned unsegmented QUBO coefficients");
  export_cmd->add_option("--instance", exported.instance, "instance JSON file")->required();
  auto* export_penalty_opt =
      export_cmd->add_option("--penalty", export_penalty, "penalty weight");
  export_cmd->add_option("--out", exported.out, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help requests exit 0; every other parse failure is an input error.
    return app.exit(e, out, err) == 0 ? kOk : kInputError;
  }

  if (*solve_cmd) {
    solve.solver.kind = solver_kind(solve_kind);
    if (*bands_opt) solve.bands = solve_bands;
    if (*penalty_opt) solve.penalty = solve_penalty;
    solve.carry_unfilled = !no_carry;
    return cmd_solve(solve, out, err);
  }
  if (*gen_cmd) {
    gp.mode = generate_mode == "discrete" ? PriorityMode::Discrete : PriorityMode::Continuous;
    return cmd_generate(generate, out, err);
  }
  if (*bench_cmd) {
    bp.solver.kind = solver_kind(bench_kind);
    bp.timing = !no_timing;
    return cmd_benchmark(bench, out, err);
  }
  if (*export_cmd) {
    if (*export_penalty_opt) exported.penalty = export_penalty;
    return cmd_qubo_export(exported, out, err);
  }
  return kInputError;
}

}  // namespace jrp::cli
