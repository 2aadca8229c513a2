#include "fgig/solver.hpp"

#include <cmath>
#include <exception>
#include <numbers>
#include <string>

#include "fgig/linalg.hpp"

namespace fgig {

std::complex<double> mode_alpha(int n, const ADProblem& problem) {
  const double omega = 2.0 * std::numbers::pi * n / problem.L;
  return omega * std::complex<double>(problem.nu * omega, problem.mu);
}

ModeSystem assemble_mode(int n, const ADProblem& problem, const SolverConfig& config,
                         const IntegrationMatrix& TQ, const InitialSpectrum& spectrum) {
  if (n < 1 || n > config.N / 2) {
    throw std::invalid_argument("assemble_mode: n=" + std::to_string(n) + " outside 1..N/2");
  }
  const int size = TQ.M + 1;
  ModeSystem sys;
  sys.n = n;
  sys.alpha = mode_alpha(n, problem);
  sys.matrix = Eigen::MatrixXcd::Identity(size, size);
  if (sys.alpha != 0.0) sys.matrix += sys.alpha * TQ.entries.cast<std::complex<double>>();
  sys.rhs_value = spectrum.at(n);
  return sys;
}

Eigen::VectorXcd solve_mode(const ModeSystem& system) {
  const Eigen::Index size = system.matrix.rows();
  const Eigen::VectorXcd rhs = Eigen::VectorXcd::Constant(size, system.rhs_value);
  if (system.alpha == 0.0) return rhs;
  return ComplexLU(system.matrix, system.n).solve(rhs);
}

SolverSetup prepare(const ADProblem& problem, const SolverConfig& config) {
  config.validate();
  problem.validate();
  SolverSetup setup;
  setup.basis = build_basis(config.lambda, config.M);
  setup.time_grid = make_time_grid(setup.basis, problem.T);
  setup.TQ = shift_integration_matrix(build_integration_matrix(setup.basis), problem.T);
  std::vector<double> samples(config.N0);
  for (int j = 0; j < config.N0; ++j) samples[j] = problem.u0(problem.L * j / config.N0);
  setup.spectrum = dft_coefficients(samples);
  return setup;
}

SpectralSolution solve_modes(const ADProblem& problem, const SolverConfig& config, Execution execution) {
  return solve_modes(problem, config, prepare(problem, config), execution);
}

SpectralSolution solve_modes(const ADProblem& problem, const SolverConfig& config, const SolverSetup& setup,
                             Execution execution) {
  const int half = config.N / 2;
  const int size = config.M + 1;

  SpectralSolution sol;
  sol.problem = problem;
  sol.config = config;
  sol.basis = setup.basis;
  sol.time_grid = setup.time_grid;
  sol.spectrum = setup.spectrum;
  sol.psi = Eigen::MatrixXcd::Zero(config.N + 1, size);

  // One slot per mode: each worker writes only its own row and error slot.
  std::vector<std::exception_ptr> errors(half);
  auto solve_one = [&](int n) {
    try {
      const ModeSystem sys = assemble_mode(n, problem, config, setup.TQ, setup.spectrum);
      sol.psi.row(half + n) = solve_mode(sys).transpose();
    } catch (...) {
      errors[n - 1] = std::current_exception();
    }
  };

  if (execution == Execution::parallel) {
#ifdef FGIG_HAVE_OPENMP
#pragma omp parallel for schedule(static)
    for (int n = 1; n <= half; ++n) solve_one(n);
#else
    for (int n = 1; n <= half; ++n) solve_one(n);
#endif
  } else {
    for (int n = 1; n <= half; ++n) solve_one(n);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (int n = 1; n <= half; ++n) sol.psi.row(half - n) = sol.psi.row(half + n).conjugate();
  for (int l = 0; l < size; ++l) {
    double re_sum = 0.0;
    for (int n = 1; n <= half; ++n) re_sum += sol.psi(half + n, l).real();
    sol.psi(half, l) = -2.0 * re_sum;
  }
  return sol;
}

ModeCoefficients coefficients_at(const SpectralSolution& sol, double t) {
  const double T = sol.time_grid.T;
  if (t < 0.0 || t > T) throw std::invalid_argument("coefficients_at: t outside [0, T]");
  const std::vector<double> w = bary_weights_at(sol.basis, sol.time_grid.to_reference(t));
  const int half = sol.config.N / 2;
  ModeCoefficients out(half);
  for (int k = -half; k <= half; ++k) {
    std::complex<double> acc{};
    for (std::size_t l = 0; l < w.size(); ++l) acc += w[l] * sol.psi(k + half, static_cast<Eigen::Index>(l));
    out[k] = acc;
  }
  return out;
}

FieldSamples evaluate_u(const SpectralSolution& sol, const FourierGrid& grid, double t) {
  return synthesize_field(coefficients_at(sol, t), grid, sol.problem.g(t));
}

FieldSamples evaluate_ux(const SpectralSolution& sol, const FourierGrid& grid, double t) {
  return synthesize_derivative(coefficients_at(sol, t), grid);
}

}  // namespace fgig
