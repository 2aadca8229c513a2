#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace fgig {

using cplx = std::complex<double>;

/// Equispaced periodic grid x_j = L j / N, j = 0..N-1, carrying modes
/// k = -N/2..N/2 with wavenumbers 2 pi k / L.
struct FourierGrid {
  double L = 0.0;
  int N = 0;

  FourierGrid(double period, int modes);

  [[nodiscard]] double node(int j) const { return L * j / N; }
  [[nodiscard]] std::vector<double> nodes() const;
  [[nodiscard]] double wavenumber(int k) const;
};

/// Complex coefficients indexed by k in [-half, half], stored contiguously.
class ModeCoefficients {
 public:
  ModeCoefficients() = default;
  explicit ModeCoefficients(int half_width) : half_(half_width), data_(2 * half_width + 1) {}

  [[nodiscard]] int half_width() const { return half_; }
  [[nodiscard]] cplx& operator[](int k) { return data_[k + half_]; }
  [[nodiscard]] const cplx& operator[](int k) const { return data_[k + half_]; }
  [[nodiscard]] std::span<const cplx> values() const { return data_; }

 private:
  int half_ = 0;
  std::vector<cplx> data_;
};

/// DFT interpolation coefficients of u0 sampled at N0 equispaced nodes,
/// stored for k = -N0/2 .. N0/2 - 1.
struct InitialSpectrum {
  int N0 = 0;
  std::vector<cplx> coeffs;

  [[nodiscard]] const cplx& at(int k) const;
};

/// Thrown when synthesis finds an imaginary residue above 1e-8, which only
/// happens when the coefficient set is not conjugate symmetric.
class SymmetryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Real samples recovered from a complex synthesis, plus the largest
/// discarded imaginary part.
struct FieldSamples {
  std::vector<double> values;
  double imag_residue = 0.0;
};

inline constexpr double kImagResidueLimit = 1e-8;

/// Direct O(N0^2) summation u_hat_k = (1/N0) sum_j u_j exp(-2 pi i k j / N0).
[[nodiscard]] InitialSpectrum dft_coefficients(std::span<const double> samples);

/// u_j = sum_k psi_k exp(i w_k x_j) + g_value for |k| <= coeffs.half_width().
[[nodiscard]] FieldSamples synthesize_field(const ModeCoefficients& coeffs, const FourierGrid& grid,
                                            double g_value);

/// u_x at the nodes: i sum_k w_k psi_k exp(i w_k x_j).
[[nodiscard]] FieldSamples synthesize_derivative(const ModeCoefficients& coeffs, const FourierGrid& grid);

/// Point evaluation of the same two series at an arbitrary x.
[[nodiscard]] cplx series_at(const ModeCoefficients& coeffs, double L, double x);
[[nodiscard]] cplx derivative_series_at(const ModeCoefficients& coeffs, double L, double x);

/// Restricts the spectrum to |k| <= N/2 (requires N < N0).
[[nodiscard]] ModeCoefficients truncate(const InitialSpectrum& spectrum, int N);

}  // namespace fgig
