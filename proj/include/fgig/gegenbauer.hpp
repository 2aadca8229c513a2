#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace fgig {

/// Smallest admissible distance of the Gegenbauer index above -1/2.
inline constexpr double kLambdaMargin = 1e-6;

/// Gegenbauer-Gauss rule on (-1, 1) for the weight (1 - x^2)^(lambda - 1/2).
///
/// Nodes are the M+1 zeros of the degree-(M+1) Gegenbauer polynomial in
/// ascending order. `christoffel` holds the matching Gauss weights and
/// `bary_weights` the barycentric interpolation weights, which alternate in
/// sign starting with a positive entry at the leftmost node.
struct GegenbauerBasis {
  double lambda = 0.0;
  int M = 0;
  std::vector<double> nodes;
  std::vector<double> christoffel;
  std::vector<double> bary_weights;

  [[nodiscard]] int size() const { return M + 1; }
};

/// First-order integration matrix: row l maps nodal samples of f to an
/// approximation of the integral of f from the left end of the interval up
/// to node l.
struct IntegrationMatrix {
  int M = 0;
  Eigen::MatrixXd entries;
};

/// Gegenbauer-Gauss nodes mapped affinely onto (0, T).
struct TimeGrid {
  double T = 0.0;
  std::vector<double> nodes;

  [[nodiscard]] double to_reference(double t) const { return 2.0 * t / T - 1.0; }
};

/// Integral of the Gegenbauer weight over (-1, 1).
[[nodiscard]] double gegenbauer_weight_mass(double lambda);

/// Golub-Welsch construction of the Gegenbauer-Gauss rule with M+1 nodes.
/// Throws std::invalid_argument for lambda <= -1/2 + kLambdaMargin or M < 1.
[[nodiscard]] GegenbauerBasis build_basis(double lambda, int M);

/// Barycentric (second form) interpolation of nodal values at t in [-1, 1].
/// Returns the nodal value itself when t is within 1e-14 of a node.
[[nodiscard]] std::complex<double> bary_interpolate(const GegenbauerBasis& basis,
                                                    std::span<const std::complex<double>> nodal_values,
                                                    double t);
[[nodiscard]] double bary_interpolate(const GegenbauerBasis& basis,
                                      std::span<const double> nodal_values, double t);

/// Real interpolation weights l_j(t) such that p(t) = sum_j l_j(t) f_j.
/// Exactly one weight is 1 (others 0) when t coincides with a node.
[[nodiscard]] std::vector<double> bary_weights_at(const GegenbauerBasis& basis, double t);

/// Q[l][j] = integral over [-1, z_l] of the j-th Lagrange basis polynomial,
/// integrated exactly with a Gauss-Legendre rule on each subinterval.
[[nodiscard]] IntegrationMatrix build_integration_matrix(const GegenbauerBasis& basis);

/// (T/2) Q, the integration matrix for the interval (0, T).
[[nodiscard]] IntegrationMatrix shift_integration_matrix(const IntegrationMatrix& Q, double T);

[[nodiscard]] TimeGrid make_time_grid(const GegenbauerBasis& basis, double T);

}  // namespace fgig
