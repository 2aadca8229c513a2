#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fgig/problem.hpp"
#include "fgig/solver.hpp"

namespace fgig {

struct ErrorReport {
  double pointwise_max = 0.0;
  double dne = 0.0;
  int N = 0;
  int M = 0;
  double lambda = 0.0;
  int N0 = 0;
  double t_final = 0.0;
};

/// sqrt((L/N) sum_j (exact_j - approx_j)^2).
[[nodiscard]] double discrete_norm_error(std::span<const double> exact, std::span<const double> approx, double L);

/// FGIG solution on the N spatial nodes at t_final against the exact solution.
/// Throws std::invalid_argument when the problem has no exact solution.
[[nodiscard]] ErrorReport error_report(const ADProblem& problem, const SolverConfig& config, double t_final,
                                       Execution execution = Execution::serial);
/// Same metrics for an already computed solution.
[[nodiscard]] ErrorReport error_report(const SpectralSolution& sol, double t_final);
/// Same metrics for the semi-analytic field.
[[nodiscard]] ErrorReport sa_error_report(const ADProblem& problem, const SolverConfig& config, double t_final);

struct ConvergenceRow {
  int N = 0;
  int M = 0;
  double lambda = 0.0;
  double dne = 0.0;
  double log10_dne = 0.0;
  double pointwise_max = 0.0;
};

/// Least-squares slope of log10(DNE) against M at one fixed N.
struct DecayDiagnostic {
  int N = 0;
  double slope = 0.0;
  double total_drop = 0.0;  // first minus last log10(DNE)
  bool monotone = false;    // no increase larger than one decade
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;  // sorted by (N, M)
  std::vector<DecayDiagnostic> decay;
};

/// log10 of zero errors is reported as log10(1e-300).
[[nodiscard]] ConvergenceTable convergence_sweep(const ADProblem& problem, std::span<const int> N_values,
                                                 std::span<const int> M_values, double lambda, double t_final,
                                                 Execution execution = Execution::serial);

struct ConditioningReport {
  std::string matrix;  // "TQ" or "A"
  double lambda = 0.0;
  int M = 0;
  int n = 0;  // mode index, 0 for TQ
  double sigma_max = 0.0;
  double sigma_min = 0.0;
  double cond = 0.0;
};

struct ConditioningStudy {
  std::vector<ConditioningReport> reports;  // sorted by (matrix, lambda, M, n)
  bool nyquist_peak = true;         // cond(A^(N/2)) >= cond(A^(1)) in every cell
  bool sigma_min_decays = true;     // sigma_min(Q) falls as lambda decreases towards -1/2 (lambda <= 0)
  bool fundamental_near_one = true; // cond(A^(1)) <= 2 in every cell
};

[[nodiscard]] ConditioningReport conditioning_of(const Eigen::MatrixXcd& matrix, std::string name, double lambda,
                                                 int M, int n);

/// cond(TQ) and cond(A^(n,M)) for n in {1, N/2} over the (lambda, M) grid.
[[nodiscard]] ConditioningStudy conditioning_study(const ADProblem& problem, const SolverConfig& config,
                                                   std::span<const double> lambdas, std::span<const int> Ms);

/// cond(A^(n,M)) for every n = 1..N/2.
[[nodiscard]] std::vector<double> mode_condition_numbers(const ADProblem& problem, const SolverConfig& config);

struct BenchReport {
  int N = 0;
  int M = 0;
  int repeats = 0;
  int threads = 1;
  double setup_median = 0.0;      // basis, integration matrix, DFT
  double assembly_median = 0.0;   // per-mode matrices
  double solve_median = 0.0;      // LU solves, serial
  double synthesis_median = 0.0;  // u and u_x at t_final
  double serial_total_median = 0.0;
  double parallel_total_median = 0.0;
  double parallel_speedup = 0.0;  // serial / parallel
  bool bit_identical = false;
};

/// Wall-clock medians; informational only.
[[nodiscard]] BenchReport bench_solve(const ADProblem& problem, const SolverConfig& config, int repeats,
                                      double t_final);

[[nodiscard]] double median(std::vector<double> values);

}  // namespace fgig
