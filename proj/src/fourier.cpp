#include "fgig/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace fgig {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_fits(const ModeCoefficients& coeffs, const FourierGrid& grid) {
  if (coeffs.half_width() > grid.N / 2) {
    throw std::invalid_argument("synthesis: modes up to " + std::to_string(coeffs.half_width()) +
                                " do not fit a grid of " + std::to_string(grid.N) + " points");
  }
}

FieldSamples take_real(std::vector<cplx> const& raw) {
  FieldSamples out;
  out.values.reserve(raw.size());
  for (const cplx& v : raw) {
    out.values.push_back(v.real());
    out.imag_residue = std::max(out.imag_residue, std::abs(v.imag()));
  }
  if (out.imag_residue > kImagResidueLimit) {
    throw SymmetryError("synthesis: imaginary residue " + std::to_string(out.imag_residue) +
                        " exceeds 1e-8; coefficients are not conjugate symmetric");
  }
  return out;
}

}  // namespace

FourierGrid::FourierGrid(double period, int modes) : L(period), N(modes) {
  if (!(L > 0.0)) throw std::invalid_argument("FourierGrid: L must be positive");
  if (N < 2 || N % 2 != 0) throw std::invalid_argument("FourierGrid: N must be even and >= 2");
}

std::vector<double> FourierGrid::nodes() const {
  std::vector<double> x(N);
  for (int j = 0; j < N; ++j) x[j] = node(j);
  return x;
}

double FourierGrid::wavenumber(int k) const { return kTwoPi * k / L; }

const cplx& InitialSpectrum::at(int k) const {
  if (k < -N0 / 2 || k >= N0 / 2) {
    throw std::out_of_range("InitialSpectrum: mode " + std::to_string(k) + " outside [-N0/2, N0/2)");
  }
  return coeffs[k + N0 / 2];
}

InitialSpectrum dft_coefficients(std::span<const double> samples) {
  const int n0 = static_cast<int>(samples.size());
  if (n0 < 4 || n0 % 2 != 0) {
    throw std::invalid_argument("dft_coefficients: N0 must be even and >= 4, got " + std::to_string(n0));
  }
  InitialSpectrum out;
  out.N0 = n0;
  out.coeffs.assign(n0, cplx{});
  for (int k = -n0 / 2; k < n0 / 2; ++k) {
    cplx acc{};
    for (int j = 0; j < n0; ++j) {
      // Reduce k*j modulo N0 so the phase stays in [0, 2 pi).
      const long long r = ((static_cast<long long>(k) * j) % n0 + n0) % n0;
      const double phase = kTwoPi * static_cast<double>(r) / n0;
      acc += samples[j] * cplx(std::cos(phase), -std::sin(phase));
    }
    out.coeffs[k + n0 / 2] = acc / static_cast<double>(n0);
  }
  return out;
}

cplx series_at(const ModeCoefficients& coeffs, double L, double x) {
  const int h = coeffs.half_width();
  cplx acc{};
  for (int k = -h; k <= h; ++k) {
    const double phase = kTwoPi * k * x / L;
    acc += coeffs[k] * cplx(std::cos(phase), std::sin(phase));
  }
  return acc;
}

cplx derivative_series_at(const ModeCoefficients& coeffs, double L, double x) {
  const int h = coeffs.half_width();
  cplx acc{};
  for (int k = -h; k <= h; ++k) {
    const double omega = kTwoPi * k / L;
    const double phase = omega * x;
    acc += omega * coeffs[k] * cplx(-std::sin(phase), std::cos(phase));
  }
  return acc;
}

FieldSamples synthesize_field(const ModeCoefficients& coeffs, const FourierGrid& grid, double g_value) {
  require_fits(coeffs, grid);
  std::vector<cplx> raw(grid.N);
  for (int j = 0; j < grid.N; ++j) raw[j] = series_at(coeffs, grid.L, grid.node(j)) + g_value;
  return take_real(raw);
}

FieldSamples synthesize_derivative(const ModeCoefficients& coeffs, const FourierGrid& grid) {
  require_fits(coeffs, grid);
  std::vector<cplx> raw(grid.N);
  for (int j = 0; j < grid.N; ++j) raw[j] = derivative_series_at(coeffs, grid.L, grid.node(j));
  return take_real(raw);
}

ModeCoefficients truncate(const InitialSpectrum& spectrum, int N) {
  if (N % 2 != 0 || N >= spectrum.N0) {
    throw std::invalid_argument("truncate: N must be even and below N0");
  }
  ModeCoefficients out(N / 2);
  for (int k = -N / 2; k <= N / 2; ++k) out[k] = spectrum.at(k);
  return out;
}

}  // namespace fgig
