#include "fgig/semianalytic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fgig/solver.hpp"

namespace fgig {

namespace {

InitialSpectrum sample_spectrum(const ADProblem& problem, int N0) {
  std::vector<double> samples(N0);
  for (int j = 0; j < N0; ++j) samples[j] = problem.u0(problem.L * j / N0);
  return dft_coefficients(samples);
}

}  // namespace

SAField::SAField(ADProblem problem, const SolverConfig& config)
    : SAField(problem, sample_spectrum(problem, config.N0), config.N) {}

SAField::SAField(ADProblem problem, InitialSpectrum spectrum, int N)
    : problem_(std::move(problem)), spectrum_(std::move(spectrum)), N_(N) {
  if (N_ < 2 || N_ % 2 != 0) throw ConfigError("SAField: N must be even and >= 2");
  if (N_ > spectrum_.N0 - 2) throw ConfigError("SAField: N must not exceed N0 - 2");
}

std::complex<double> SAField::coefficient(int n, double t) const {
  if (n < 1 || n > N_ / 2) throw std::invalid_argument("SAField: mode " + std::to_string(n) + " outside 1..N/2");
  return spectrum_.at(n) * std::exp(-mode_alpha(n, problem_) * t);
}

double SAField::u(double x, double t) const {
  const double L = problem_.L;
  std::complex<double> series{};
  double mean_shift = 0.0;
  for (int k = 1; k <= N_ / 2; ++k) {
    const double omega = 2.0 * std::numbers::pi * k / L;
    const std::complex<double> c = coefficient(k, t);
    series += c * std::exp(std::complex<double>(0.0, omega * x));
    mean_shift += c.real();
  }
  return 2.0 * series.real() - 2.0 * mean_shift + problem_.g(t);
}

double SAField::ux(double x, double t) const {
  const double L = problem_.L;
  std::complex<double> series{};
  for (int k = 1; k <= N_ / 2; ++k) {
    const double omega = 2.0 * std::numbers::pi * k / L;
    series += omega * coefficient(k, t) * std::exp(std::complex<double>(0.0, omega * x));
  }
  return -2.0 * series.imag();
}

ModeCoefficients SAField::coefficients_at(double t) const {
  const int half = N_ / 2;
  ModeCoefficients out(half);
  double re_sum = 0.0;
  for (int n = 1; n <= half; ++n) {
    out[n] = coefficient(n, t);
    out[-n] = std::conj(out[n]);
    re_sum += out[n].real();
  }
  out[0] = -2.0 * re_sum;
  return out;
}

FieldSamples sa_evaluate_u(const SAField& field, const FourierGrid& grid, double t) {
  return synthesize_field(field.coefficients_at(t), grid, field.problem().g(t));
}

FieldSamples sa_evaluate_ux(const SAField& field, const FourierGrid& grid, double t) {
  return synthesize_derivative(field.coefficients_at(t), grid);
}

}  // namespace fgig
