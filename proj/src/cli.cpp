#include "fgig/cli.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "CLI11.hpp"
#include "fgig/analysis.hpp"
#include "fgig/csv.hpp"
#include "fgig/semianalytic.hpp"
#include "fgig/solver.hpp"

namespace fgig {

namespace fs = std::filesystem;

namespace {

Execution execution_of(const RunManifest& m) { return m.parallel ? Execution::parallel : Execution::serial; }

// Augmented time grid: the collocation nodes, the horizon T and t_final.
std::vector<double> output_times(const TimeGrid& grid, double t_final) {
  std::set<double> times(grid.nodes.begin(), grid.nodes.end());
  times.insert(grid.T);
  times.insert(t_final);
  return {times.begin(), times.end()};
}

void write_report(const fs::path& path, const ErrorReport& r) {
  CsvWriter csv(path, {"N", "M", "lambda", "N0", "t_final", "pointwise_max", "dne"});
  csv.cell(r.N).cell(r.M).cell(r.lambda).cell(r.N0).cell(r.t_final).cell(r.pointwise_max).cell(r.dne);
  csv.end_row();
  csv.close();
}

// Writes x, t, u, ux (and exact/abs_err when known) over the spatial grid
// for each requested time.
template <typename EvalU, typename EvalUx>
void write_solution(const fs::path& path, const ADProblem& problem, const FourierGrid& grid,
                    const std::vector<double>& times, EvalU&& eval_u, EvalUx&& eval_ux) {
  const bool exact = problem.has_exact();
  auto csv = exact ? CsvWriter(path, {"x", "t", "u", "ux", "u_exact", "abs_err"})
                   : CsvWriter(path, {"x", "t", "u", "ux"});
  for (const double t : times) {
    const FieldSamples u = eval_u(t);
    const FieldSamples ux = eval_ux(t);
    for (int j = 0; j < grid.N; ++j) {
      const double x = grid.node(j);
      csv.cell(x).cell(t).cell(u.values[j]).cell(ux.values[j]);
      if (exact) {
        const double ue = problem.exact(x, t);
        csv.cell(ue).cell(std::abs(ue - u.values[j]));
      }
      csv.end_row();
    }
  }
  csv.close();
}

}  // namespace

Command parse_command(const std::string& name) {
  if (name == "solve") return Command::solve;
  if (name == "sa") return Command::sa;
  if (name == "convergence") return Command::convergence;
  if (name == "conditioning") return Command::conditioning;
  if (name == "bench") return Command::bench;
  throw std::invalid_argument("unknown command '" + name + "'");
}

std::string command_name(Command command) {
  switch (command) {
    case Command::solve: return "solve";
    case Command::sa: return "sa";
    case Command::convergence: return "convergence";
    case Command::conditioning: return "conditioning";
    case Command::bench: return "bench";
  }
  return "?";
}

std::vector<fs::path> cmd_solve(const RunManifest& manifest) {
  const RunConfig run = load_config(manifest.config_path);
  ensure_writable_directory(manifest.output_dir);
  const SpectralSolution sol = solve_modes(run.problem, run.solver, execution_of(manifest));
  const FourierGrid grid(run.problem.L, run.solver.N);

  std::vector<fs::path> written;
  const fs::path solution = manifest.output_dir / "solution.csv";
  write_solution(solution, run.problem, grid, output_times(sol.time_grid, run.t_final),
                 [&](double t) { return evaluate_u(sol, grid, t); },
                 [&](double t) { return evaluate_ux(sol, grid, t); });
  written.push_back(solution);

  const fs::path coefficients = manifest.output_dir / "coefficients.csv";
  {
    CsvWriter csv(coefficients, {"k", "l", "t_node", "re_psi", "im_psi"});
    const int half = run.solver.N / 2;
    for (int k = -half; k <= half; ++k) {
      for (int l = 0; l <= run.solver.M; ++l) {
        const std::complex<double> c = sol.coefficient(k, l);
        csv.cell(k).cell(l).cell(sol.time_grid.nodes[l]).cell(c.real()).cell(c.imag());
        csv.end_row();
      }
    }
    csv.close();
  }
  written.push_back(coefficients);

  if (run.problem.has_exact()) {
    const fs::path report = manifest.output_dir / "report.csv";
    write_report(report, error_report(sol, run.t_final));
    written.push_back(report);
  }
  return written;
}

std::vector<fs::path> cmd_sa(const RunManifest& manifest) {
  const RunConfig run = load_config(manifest.config_path);
  ensure_writable_directory(manifest.output_dir);
  const SAField field(run.problem, run.solver);
  const FourierGrid grid(run.problem.L, run.solver.N);
  const TimeGrid time_grid = make_time_grid(build_basis(run.solver.lambda, run.solver.M), run.problem.T);

  std::vector<fs::path> written;
  const fs::path solution = manifest.output_dir / "solution.csv";
  write_solution(solution, run.problem, grid, output_times(time_grid, run.t_final),
                 [&](double t) { return sa_evaluate_u(field, grid, t); },
                 [&](double t) { return sa_evaluate_ux(field, grid, t); });
  written.push_back(solution);

  if (run.problem.has_exact()) {
    const fs::path report = manifest.output_dir / "report.csv";
    write_report(report, sa_error_report(run.problem, run.solver, run.t_final));
    written.push_back(report);
  }
  return written;
}

std::vector<fs::path> cmd_convergence(const RunManifest& manifest) {
  const RunConfig run = load_config(manifest.config_path);
  ensure_writable_directory(manifest.output_dir);
  const std::vector<int> Ns = run.sweep_N.empty() ? std::vector<int>{run.solver.N} : run.sweep_N;
  const std::vector<int> Ms = run.sweep_M.empty() ? std::vector<int>{run.solver.M} : run.sweep_M;
  const ConvergenceTable table =
      convergence_sweep(run.problem, Ns, Ms, run.solver.lambda, run.t_final, execution_of(manifest));

  const fs::path sweep = manifest.output_dir / "sweep.csv";
  {
    CsvWriter csv(sweep, {"N", "M", "lambda", "N0", "t_final", "dne", "log10_dne", "pointwise_max"});
    for (const ConvergenceRow& r : table.rows) {
      csv.cell(r.N).cell(r.M).cell(r.lambda).cell(r.N + 2).cell(run.t_final).cell(r.dne).cell(r.log10_dne)
          .cell(r.pointwise_max);
      csv.end_row();
    }
    csv.close();
  }
  const fs::path decay = manifest.output_dir / "decay.csv";
  {
    CsvWriter csv(decay, {"N", "slope_log10_dne_per_M", "total_drop_decades", "monotone"});
    for (const DecayDiagnostic& d : table.decay) {
      csv.cell(d.N).cell(d.slope).cell(d.total_drop).cell(d.monotone ? 1 : 0);
      csv.end_row();
    }
    csv.close();
  }
  return {sweep, decay};
}

std::vector<fs::path> cmd_conditioning(const RunManifest& manifest) {
  const RunConfig run = load_config(manifest.config_path);
  ensure_writable_directory(manifest.output_dir);
  const std::vector<double> lambdas =
      run.study_lambdas.empty() ? std::vector<double>{run.solver.lambda} : run.study_lambdas;
  const std::vector<int> Ms = run.study_M.empty() ? std::vector<int>{run.solver.M} : run.study_M;
  const ConditioningStudy study = conditioning_study(run.problem, run.solver, lambdas, Ms);

  const fs::path path = manifest.output_dir / "conditioning.csv";
  CsvWriter csv(path, {"matrix", "lambda", "M", "n", "sigma_max", "sigma_min", "cond"});
  for (const ConditioningReport& r : study.reports) {
    csv.cell(r.matrix).cell(r.lambda).cell(r.M).cell(r.n).cell(r.sigma_max).cell(r.sigma_min).cell(r.cond);
    csv.end_row();
  }
  csv.close();
  return {path};
}

std::vector<fs::path> cmd_bench(const RunManifest& manifest) {
  const RunConfig run = load_config(manifest.config_path);
  ensure_writable_directory(manifest.output_dir);
  const BenchReport r = bench_solve(run.problem, run.solver, run.repeats, run.t_final);

  const fs::path path = manifest.output_dir / "bench.csv";
  CsvWriter csv(path, {"N", "M", "repeats", "threads", "setup_s", "assembly_s", "solve_s", "synthesis_s",
                       "serial_total_s", "parallel_total_s", "parallel_speedup", "bit_identical"});
  csv.cell(r.N).cell(r.M).cell(r.repeats).cell(r.threads).cell(r.setup_median).cell(r.assembly_median)
      .cell(r.solve_median).cell(r.synthesis_median).cell(r.serial_total_median).cell(r.parallel_total_median)
      .cell(r.parallel_speedup).cell(r.bit_identical ? 1 : 0);
  csv.end_row();
  csv.close();
  return {path};
}

std::vector<fs::path> run_manifest(const RunManifest& manifest) {
  switch (manifest.command) {
    case Command::solve: return cmd_solve(manifest);
    case Command::sa: return cmd_sa(manifest);
    case Command::convergence: return cmd_convergence(manifest);
    case Command::conditioning: return cmd_conditioning(manifest);
    case Command::bench: return cmd_bench(manifest);
  }
  throw std::logic_error("run_manifest: unhandled command");
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fourier-Gegenbauer integral-Galerkin solver for periodic advection-diffusion"};
  app.require_subcommand(1);

  RunManifest manifest;
  std::string config, output;
  for (const char* name : {"solve", "sa", "convergence", "conditioning", "bench"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "key=value config file")->required();
    sub->add_option("--out", output, "output directory")->required();
    sub->add_flag("--parallel", manifest.parallel, "solve independent modes with OpenMP");
    sub->add_option("--seed", manifest.seed, "seed for randomized stages");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  manifest.command = parse_command(app.get_subcommands().front()->get_name());
  manifest.config_path = config;
  manifest.output_dir = output;
  try {
    for (const fs::path& p : run_manifest(manifest)) out << "wrote " << p.string() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << command_name(manifest.command) << ": " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace fgig
