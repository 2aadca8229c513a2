#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "fgig/fourier.hpp"
#include "fgig/gegenbauer.hpp"
#include "fgig/problem.hpp"

namespace fgig {

/// Collocated integral equation for Fourier mode n >= 1:
/// (I + alpha_n (T/2) Q) psi_n = u_hat_{0,n} 1.
struct ModeSystem {
  int n = 0;
  std::complex<double> alpha;
  Eigen::MatrixXcd matrix;
  std::complex<double> rhs_value;
};

/// alpha_n = w_n (nu w_n + i mu), w_n = 2 pi n / L.
[[nodiscard]] std::complex<double> mode_alpha(int n, const ADProblem& problem);

[[nodiscard]] ModeSystem assemble_mode(int n, const ADProblem& problem, const SolverConfig& config,
                                       const IntegrationMatrix& TQ, const InitialSpectrum& spectrum);

/// Solves one assembled system; alpha = 0 short-circuits to the RHS.
/// Throws SingularSystemError tagged with the mode index.
[[nodiscard]] Eigen::VectorXcd solve_mode(const ModeSystem& system);

enum class Execution { serial, parallel };

/// Mode coefficients psi_k(t_l) on the (N+1) x (M+1) mode-by-node grid.
///
/// Rows are indexed by k + N/2. Negative modes are the exact conjugates of
/// the solved positive modes and row N/2 (k = 0) holds the zero-mean
/// completion -2 sum_{k>=1} Re psi_k.
struct SpectralSolution {
  ADProblem problem;
  SolverConfig config;
  GegenbauerBasis basis;
  TimeGrid time_grid;
  InitialSpectrum spectrum;
  Eigen::MatrixXcd psi;

  [[nodiscard]] std::complex<double> coefficient(int k, int l) const { return psi(k + config.N / 2, l); }
};

/// Everything that does not depend on the mode index: basis, (T/2) Q and
/// the DFT of u0. Reusable across solves of the same configuration.
struct SolverSetup {
  GegenbauerBasis basis;
  TimeGrid time_grid;
  IntegrationMatrix TQ;
  InitialSpectrum spectrum;
};

[[nodiscard]] SolverSetup prepare(const ADProblem& problem, const SolverConfig& config);

/// Serial reference path and OpenMP path over the N/2 independent systems.
/// Both produce bit-identical results.
[[nodiscard]] SpectralSolution solve_modes(const ADProblem& problem, const SolverConfig& config,
                                           Execution execution = Execution::serial);
[[nodiscard]] SpectralSolution solve_modes(const ADProblem& problem, const SolverConfig& config,
                                           const SolverSetup& setup, Execution execution);

/// Coefficients at time t in [0, T] by barycentric interpolation in time.
[[nodiscard]] ModeCoefficients coefficients_at(const SpectralSolution& sol, double t);

[[nodiscard]] FieldSamples evaluate_u(const SpectralSolution& sol, const FourierGrid& grid, double t);
[[nodiscard]] FieldSamples evaluate_ux(const SpectralSolution& sol, const FourierGrid& grid, double t);

}  // namespace fgig
