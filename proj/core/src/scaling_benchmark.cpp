#include "jrp/scaling_benchmark.hpp"

#include <chrono>
#include <iomanip>
#include <ostream>

#include "jrp/errors.hpp"

namespace jrp {

std::vector<ScalingRow> run_scaling(const ScalingParams& params) {
  if (params.repetitions < 1) throw ParameterError("repetitions must be >= 1");
  std::vector<ScalingRow> rows;

  for (std::size_t k : params.total_jobs) {
    std::vector<ScalingRow> cells(params.bands.size());
    for (std::size_t r = 0; r < params.repetitions; ++r) {
      GeneratorParams gen = params.generator;
      gen.total_jobs = k;
      gen.mode = PriorityMode::Continuous;
      gen.seed = params.generator.seed + 1000003ULL * k + r;
      const JrpInstance instance = generate_instance(gen);

      const auto full_variables =
          static_cast<double>(build_pruned_problem(instance).candidates.pairs.size());
      const double full_score = run_full(instance, params.solver, params.pipeline).total_score;

      for (std::size_t c = 0; c < params.bands.size(); ++c) {
        auto& cell = cells[c];
        const auto start = std::chrono::steady_clock::now();
        const PipelineReport report =
            run(instance, params.bands[c], params.solver, params.pipeline);
        const std::chrono::duration<double, std::milli> elapsed =
            std::chrono::steady_clock::now() - start;

        cell.mean_full_variables += full_variables;
        cell.mean_total_variables += static_cast<double>(report.total_variables);
        cell.mean_largest_subproblem += static_cast<double>(report.largest_subproblem);
        cell.mean_alpha += report.alpha_estimate;
        cell.mean_wall_ms += elapsed.count();
        cell.mean_score_segmented += report.total_score;
        cell.mean_score_full += full_score;
        if (static_cast<double>(report.total_variables) < full_variables) {
          cell.fraction_fewer_variables += 1.0;
        }
        cell.agents = instance.agent_count();
        cell.vacants = instance.vacant_count();
      }
    }

    const auto reps = static_cast<double>(params.repetitions);
    for (std::size_t c = 0; c < params.bands.size(); ++c) {
      auto& cell = cells[c];
      cell.total_jobs = k;
      cell.bands = params.bands[c];
      cell.repetitions = params.repetitions;
      for (double* v : {&cell.mean_full_variables, &cell.mean_total_variables,
                        &cell.mean_largest_subproblem, &cell.mean_alpha, &cell.mean_wall_ms,
                        &cell.mean_score_segmented, &cell.mean_score_full,
                        &cell.fraction_fewer_variables}) {
        *v /= reps;
      }
      rows.push_back(cell);
    }
  }
  return rows;
}

void write_scaling_table(std::ostream& out, const std::vector<ScalingRow>& rows,
                         bool timing) {
  out << "K,D,J,I,reps,full_variables,total_variables,largest_subproblem,alpha,"
         "score_segmented,score_full,fraction_fewer_variables";
  if (timing) out << ",wall_ms";
  out << '\n';
  const auto flags = out.flags();
  const auto precision = out.precision(6);
  out << std::fixed;
  for (const auto& r : rows) {
    out << r.total_jobs << ',' << r.bands << ',' << r.agents << ',' << r.vacants << ','
        << r.repetitions << ',' << r.mean_full_variables << ',' << r.mean_total_variables
        << ',' << r.mean_largest_subproblem << ',' << r.mean_alpha << ','
        << r.mean_score_segmented << ',' << r.mean_score_full << ','
        << r.fraction_fewer_variables;
    if (timing) out << ',' << r.mean_wall_ms;
    out << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

}  // namespace jrp
