#include "fgig/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <numeric>
#include <stdexcept>
#include <tuple>

#ifdef FGIG_HAVE_OPENMP
#include <omp.h>
#endif

#include "fgig/linalg.hpp"
#include "fgig/semianalytic.hpp"

namespace fgig {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

ErrorReport compare_with_exact(const ADProblem& problem, const FourierGrid& grid, std::span<const double> approx,
                               double t_final) {
  std::vector<double> exact(grid.N);
  ErrorReport report;
  for (int j = 0; j < grid.N; ++j) {
    exact[j] = problem.exact(grid.node(j), t_final);
    report.pointwise_max = std::max(report.pointwise_max, std::abs(exact[j] - approx[j]));
  }
  report.dne = discrete_norm_error(exact, approx, grid.L);
  report.t_final = t_final;
  return report;
}

void require_exact(const ADProblem& problem) {
  if (!problem.has_exact()) {
    throw std::invalid_argument("error_report: problem '" + problem.name + "' has no exact solution");
  }
}

}  // namespace

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median: empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

double discrete_norm_error(std::span<const double> exact, std::span<const double> approx, double L) {
  if (exact.size() != approx.size() || exact.empty()) {
    throw std::invalid_argument("discrete_norm_error: sample sizes differ or are empty");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < exact.size(); ++j) {
    const double d = exact[j] - approx[j];
    sum += d * d;
  }
  return std::sqrt(L / static_cast<double>(exact.size()) * sum);
}

ErrorReport error_report(const SpectralSolution& sol, double t_final) {
  require_exact(sol.problem);
  const FourierGrid grid(sol.problem.L, sol.config.N);
  const FieldSamples u = evaluate_u(sol, grid, t_final);
  ErrorReport report = compare_with_exact(sol.problem, grid, u.values, t_final);
  report.N = sol.config.N;
  report.M = sol.config.M;
  report.lambda = sol.config.lambda;
  report.N0 = sol.config.N0;
  return report;
}

ErrorReport error_report(const ADProblem& problem, const SolverConfig& config, double t_final,
                         Execution execution) {
  require_exact(problem);
  return error_report(solve_modes(problem, config, execution), t_final);
}

ErrorReport sa_error_report(const ADProblem& problem, const SolverConfig& config, double t_final) {
  require_exact(problem);
  config.validate();
  const SAField field(problem, config);
  const FourierGrid grid(problem.L, config.N);
  std::vector<double> approx(grid.N);
  for (int j = 0; j < grid.N; ++j) approx[j] = field.u(grid.node(j), t_final);
  ErrorReport report = compare_with_exact(problem, grid, approx, t_final);
  report.N = config.N;
  report.M = config.M;
  report.lambda = config.lambda;
  report.N0 = config.N0;
  return report;
}

ConvergenceTable convergence_sweep(const ADProblem& problem, std::span<const int> N_values,
                                   std::span<const int> M_values, double lambda, double t_final,
                                   Execution execution) {
  if (N_values.empty() || M_values.empty()) throw std::invalid_argument("convergence_sweep: empty range");
  require_exact(problem);

  std::vector<int> Ns(N_values.begin(), N_values.end());
  std::vector<int> Ms(M_values.begin(), M_values.end());
  std::sort(Ns.begin(), Ns.end());
  std::sort(Ms.begin(), Ms.end());

  ConvergenceTable table;
  table.rows.resize(Ns.size() * Ms.size());
  std::vector<std::exception_ptr> errors(table.rows.size());
  const int cells = static_cast<int>(table.rows.size());
  const int m_count = static_cast<int>(Ms.size());

  auto run_cell = [&](int c) {
    try {
      SolverConfig cfg = SolverConfig::with_defaults(Ns[c / m_count], Ms[c % m_count]);
      cfg.lambda = lambda;
      const ErrorReport r = error_report(problem, cfg, t_final);
      table.rows[c] = ConvergenceRow{cfg.N, cfg.M, lambda, r.dne, std::log10(std::max(r.dne, 1e-300)),
                                     r.pointwise_max};
    } catch (...) {
      errors[c] = std::current_exception();
    }
  };
  if (execution == Execution::parallel) {
#ifdef FGIG_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < cells; ++c) run_cell(c);
#else
    for (int c = 0; c < cells; ++c) run_cell(c);
#endif
  } else {
    for (int c = 0; c < cells; ++c) run_cell(c);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (std::size_t i = 0; i < Ns.size(); ++i) {
    DecayDiagnostic d;
    d.N = Ns[i];
    const auto first = table.rows.begin() + static_cast<std::ptrdiff_t>(i * Ms.size());
    std::vector<double> ms, logs;
    for (auto it = first; it != first + m_count; ++it) {
      ms.push_back(it->M);
      logs.push_back(it->log10_dne);
    }
    if (ms.size() >= 2) {
      const double mx = std::accumulate(ms.begin(), ms.end(), 0.0) / ms.size();
      const double my = std::accumulate(logs.begin(), logs.end(), 0.0) / logs.size();
      double sxy = 0.0, sxx = 0.0;
      for (std::size_t k = 0; k < ms.size(); ++k) {
        sxy += (ms[k] - mx) * (logs[k] - my);
        sxx += (ms[k] - mx) * (ms[k] - mx);
      }
      d.slope = sxy / sxx;
    }
    d.total_drop = logs.front() - logs.back();
    d.monotone = true;
    for (std::size_t k = 1; k < logs.size(); ++k) {
      if (logs[k] > logs[k - 1] + 1.0) d.monotone = false;
    }
    table.decay.push_back(d);
  }
  return table;
}

ConditioningReport conditioning_of(const Eigen::MatrixXcd& matrix, std::string name, double lambda, int M, int n) {
  const std::vector<double> s = singular_values(matrix);
  ConditioningReport r;
  r.matrix = std::move(name);
  r.lambda = lambda;
  r.M = M;
  r.n = n;
  r.sigma_max = s.front();
  r.sigma_min = s.back();
  r.cond = r.sigma_max / r.sigma_min;
  return r;
}

ConditioningStudy conditioning_study(const ADProblem& problem, const SolverConfig& config,
                                     std::span<const double> lambdas, std::span<const int> Ms) {
  if (lambdas.empty() || Ms.empty()) throw std::invalid_argument("conditioning_study: empty parameter list");
  config.validate();
  ConditioningStudy study;
  std::vector<ConditioningReport> tq_rows, a_rows;
  for (const double lambda : lambdas) {
    for (const int M : Ms) {
      const GegenbauerBasis basis = build_basis(lambda, M);
      const IntegrationMatrix TQ = shift_integration_matrix(build_integration_matrix(basis), problem.T);
      const Eigen::MatrixXcd tq = TQ.entries.cast<std::complex<double>>();
      tq_rows.push_back(conditioning_of(tq, "TQ", lambda, M, 0));

      const int half = config.N / 2;
      std::vector<int> modes = {1};
      if (half != 1) modes.push_back(half);
      double cond_first = 0.0, cond_last = 0.0;
      for (const int n : modes) {
        const Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(M + 1, M + 1) + mode_alpha(n, problem) * tq;
        a_rows.push_back(conditioning_of(A, "A", lambda, M, n));
        if (n == 1) cond_first = a_rows.back().cond;
        cond_last = a_rows.back().cond;
      }
      if (problem.mu != 0.0 || problem.nu != 0.0) study.nyquist_peak &= cond_last >= cond_first;
      study.fundamental_near_one &= cond_first <= 2.0;
    }
  }

  auto key = [](const ConditioningReport& r) { return std::tie(r.lambda, r.M, r.n); };
  std::sort(tq_rows.begin(), tq_rows.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  std::sort(a_rows.begin(), a_rows.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });

  // Rows are ascending in lambda: sigma_min(Q) must fall as lambda moves
  // towards -1/2, checked over lambda <= 0.
  study.sigma_min_decays = true;
  for (const int M : Ms) {
    std::vector<const ConditioningReport*> sel;
    for (const auto& r : tq_rows) {
      if (r.M == M && r.lambda <= 0.0) sel.push_back(&r);
    }
    for (std::size_t i = 1; i < sel.size(); ++i) study.sigma_min_decays &= sel[i - 1]->sigma_min < sel[i]->sigma_min;
  }

  study.reports = std::move(tq_rows);
  study.reports.insert(study.reports.end(), a_rows.begin(), a_rows.end());
  return study;
}

std::vector<double> mode_condition_numbers(const ADProblem& problem, const SolverConfig& config) {
  config.validate();
  const GegenbauerBasis basis = build_basis(config.lambda, config.M);
  const Eigen::MatrixXcd tq =
      shift_integration_matrix(build_integration_matrix(basis), problem.T).entries.cast<std::complex<double>>();
  std::vector<double> conds;
  for (int n = 1; n <= config.N / 2; ++n) {
    const Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(config.M + 1, config.M + 1) + mode_alpha(n, problem) * tq;
    conds.push_back(conditioning_of(A, "A", config.lambda, config.M, n).cond);
  }
  return conds;
}

BenchReport bench_solve(const ADProblem& problem, const SolverConfig& config, int repeats, double t_final) {
  if (repeats < 3) throw std::invalid_argument("bench_solve: repeats must be >= 3");
  BenchReport report;
  report.N = config.N;
  report.M = config.M;
  report.repeats = repeats;
#ifdef FGIG_HAVE_OPENMP
  report.threads = omp_get_max_threads();
#endif
  const FourierGrid grid(problem.L, config.N);

  std::vector<double> setup_t, assembly_t, solve_t, synth_t, serial_t, parallel_t;
  SpectralSolution serial_sol, parallel_sol;
  for (int r = 0; r < repeats; ++r) {
    auto start = Clock::now();
    const SolverSetup setup = prepare(problem, config);
    setup_t.push_back(seconds_since(start));

    start = Clock::now();
    std::vector<ModeSystem> systems;
    for (int n = 1; n <= config.N / 2; ++n) systems.push_back(assemble_mode(n, problem, config, setup.TQ, setup.spectrum));
    assembly_t.push_back(seconds_since(start));

    start = Clock::now();
    for (const ModeSystem& sys : systems) {
      const Eigen::VectorXcd x = solve_mode(sys);
      if (!x.allFinite()) throw std::runtime_error("bench_solve: non-finite solution");
    }
    solve_t.push_back(seconds_since(start));

    start = Clock::now();
    serial_sol = solve_modes(problem, config, setup, Execution::serial);
    serial_t.push_back(seconds_since(start));

    start = Clock::now();
    parallel_sol = solve_modes(problem, config, setup, Execution::parallel);
    parallel_t.push_back(seconds_since(start));

    start = Clock::now();
    const FieldSamples u = evaluate_u(serial_sol, grid, t_final);
    const FieldSamples ux = evaluate_ux(serial_sol, grid, t_final);
    synth_t.push_back(seconds_since(start));
    if (u.values.size() != ux.values.size()) throw std::logic_error("bench_solve: synthesis size mismatch");
  }
  report.setup_median = median(setup_t);
  report.assembly_median = median(assembly_t);
  report.solve_median = median(solve_t);
  report.synthesis_median = median(synth_t);
  report.serial_total_median = median(serial_t);
  report.parallel_total_median = median(parallel_t);
  report.parallel_speedup = report.serial_total_median / report.parallel_total_median;
  report.bit_identical = serial_sol.psi == parallel_sol.psi;
  return report;
}

}  // namespace fgig
