#pragma once

#include <complex>

#include "fgig/fourier.hpp"
#include "fgig/problem.hpp"

namespace fgig {

/// Closed-form mode coefficients psi_n(t) = u_hat_{0,n} exp(-alpha_n t):
/// no linear solves, exact in time.
class SAField {
 public:
  /// Samples u0 at N0 points and keeps modes 1..N/2. Requires N <= N0 - 2.
  SAField(ADProblem problem, const SolverConfig& config);
  SAField(ADProblem problem, InitialSpectrum spectrum, int N);

  [[nodiscard]] std::complex<double> coefficient(int n, double t) const;

  [[nodiscard]] double u(double x, double t) const;
  [[nodiscard]] double ux(double x, double t) const;

  /// Full coefficient set at t (k = -N/2..N/2) for grid synthesis.
  [[nodiscard]] ModeCoefficients coefficients_at(double t) const;

  [[nodiscard]] const ADProblem& problem() const { return problem_; }
  [[nodiscard]] const InitialSpectrum& spectrum() const { return spectrum_; }
  [[nodiscard]] int N() const { return N_; }

 private:
  ADProblem problem_;
  InitialSpectrum spectrum_;
  int N_;
};

[[nodiscard]] FieldSamples sa_evaluate_u(const SAField& field, const FourierGrid& grid, double t);
[[nodiscard]] FieldSamples sa_evaluate_ux(const SAField& field, const FourierGrid& grid, double t);

}  // namespace fgig
