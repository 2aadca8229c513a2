#include "fgig/gegenbauer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace fgig {

namespace {

constexpr double kNodeHitTolerance = 1e-14;

// Off-diagonal entries of the symmetric Jacobi matrix for the Gegenbauer
// weight. beta_k = k (k + 2 lambda - 1) / (4 (k + lambda)(k + lambda - 1)),
// with the removable 0/0 at k = 1, lambda = 0 resolved as 1 / (2 lambda + 2).
double recurrence_beta(int k, double lambda) {
  if (k == 1) return 1.0 / (2.0 * lambda + 2.0);
  const double kk = k;
  return kk * (kk + 2.0 * lambda - 1.0) / (4.0 * (kk + lambda) * (kk + lambda - 1.0));
}

template <typename Value>
Value interpolate(const GegenbauerBasis& basis, std::span<const Value> f, double t) {
  if (static_cast<int>(f.size()) != basis.size()) {
    throw std::invalid_argument("bary_interpolate: expected " + std::to_string(basis.size()) +
                                " nodal values, got " + std::to_string(f.size()));
  }
  Value numer{};
  double denom = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double diff = t - basis.nodes[j];
    if (std::abs(diff) <= kNodeHitTolerance) return f[j];
    const double term = basis.bary_weights[j] / diff;
    numer += term * f[j];
    denom += term;
  }
  return numer / denom;
}

}  // namespace

double gegenbauer_weight_mass(double lambda) {
  return std::sqrt(std::numbers::pi) * std::exp(std::lgamma(lambda + 0.5) - std::lgamma(lambda + 1.0));
}

GegenbauerBasis build_basis(double lambda, int M) {
  if (!(lambda > -0.5 + kLambdaMargin)) {
    throw std::invalid_argument("build_basis: lambda must exceed -1/2 + 1e-6, got " + std::to_string(lambda));
  }
  if (M < 1) throw std::invalid_argument("build_basis: M must be >= 1, got " + std::to_string(M));

  const int n = M + 1;
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd offdiag(n - 1);
  for (int k = 1; k < n; ++k) offdiag(k - 1) = std::sqrt(recurrence_beta(k, lambda));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, offdiag, Eigen::ComputeEigenvectors);
  if (eig.info() != Eigen::Success) throw std::runtime_error("build_basis: tridiagonal eigensolve failed");

  const double mass = gegenbauer_weight_mass(lambda);
  GegenbauerBasis basis;
  basis.lambda = lambda;
  basis.M = M;
  basis.nodes.resize(n);
  basis.christoffel.resize(n);
  for (int l = 0; l < n; ++l) {
    basis.nodes[l] = eig.eigenvalues()(l);
    const double v0 = eig.eigenvectors()(0, l);
    basis.christoffel[l] = mass * v0 * v0;
  }

  // The rule is symmetric; enforce it exactly so that rounding in the
  // eigensolver does not leak into the integration matrix.
  for (int l = 0; l < n / 2; ++l) {
    const int r = n - 1 - l;
    const double z = 0.5 * (basis.nodes[r] - basis.nodes[l]);
    const double w = 0.5 * (basis.christoffel[l] + basis.christoffel[r]);
    basis.nodes[l] = -z;
    basis.nodes[r] = z;
    basis.christoffel[l] = w;
    basis.christoffel[r] = w;
  }
  if (n % 2 == 1) basis.nodes[n / 2] = 0.0;

  basis.bary_weights.resize(n);
  for (int l = 0; l < n; ++l) {
    const double sign = (l % 2 == 0) ? 1.0 : -1.0;
    basis.bary_weights[l] = sign * std::sin(std::acos(basis.nodes[l])) * std::sqrt(basis.christoffel[l]);
  }
  return basis;
}

std::complex<double> bary_interpolate(const GegenbauerBasis& basis,
                                      std::span<const std::complex<double>> nodal_values, double t) {
  return interpolate(basis, nodal_values, t);
}

double bary_interpolate(const GegenbauerBasis& basis, std::span<const double> nodal_values, double t) {
  return interpolate(basis, nodal_values, t);
}

std::vector<double> bary_weights_at(const GegenbauerBasis& basis, double t) {
  const int n = basis.size();
  std::vector<double> w(n, 0.0);
  for (int j = 0; j < n; ++j) {
    if (std::abs(t - basis.nodes[j]) <= kNodeHitTolerance) {
      w[j] = 1.0;
      return w;
    }
  }
  double denom = 0.0;
  for (int j = 0; j < n; ++j) {
    w[j] = basis.bary_weights[j] / (t - basis.nodes[j]);
    denom += w[j];
  }
  for (double& v : w) v /= denom;
  return w;
}

IntegrationMatrix build_integration_matrix(const GegenbauerBasis& basis) {
  const int n = basis.size();
  // Lagrange basis polynomials have degree M; a Gauss-Legendre rule with
  // ceil((M+1)/2) + 1 points integrates them exactly.
  const int gl_points = (basis.M + 2) / 2 + 1;
  const GegenbauerBasis legendre = build_basis(0.5, gl_points - 1);

  IntegrationMatrix Q;
  Q.M = basis.M;
  Q.entries = Eigen::MatrixXd::Zero(n, n);
  for (int l = 0; l < n; ++l) {
    const double half = 0.5 * (basis.nodes[l] + 1.0);
    for (int q = 0; q < gl_points; ++q) {
      const double s = -1.0 + half * (legendre.nodes[q] + 1.0);
      const std::vector<double> lag = bary_weights_at(basis, s);
      const double w = half * legendre.christoffel[q];
      for (int j = 0; j < n; ++j) Q.entries(l, j) += w * lag[j];
    }
  }
  return Q;
}

IntegrationMatrix shift_integration_matrix(const IntegrationMatrix& Q, double T) {
  if (!(T > 0.0)) throw std::invalid_argument("shift_integration_matrix: T must be positive");
  IntegrationMatrix shifted;
  shifted.M = Q.M;
  shifted.entries = (T / 2.0) * Q.entries;
  return shifted;
}

TimeGrid make_time_grid(const GegenbauerBasis& basis, double T) {
  if (!(T > 0.0)) throw std::invalid_argument("make_time_grid: T must be positive");
  TimeGrid grid;
  grid.T = T;
  grid.nodes.resize(basis.nodes.size());
  std::transform(basis.nodes.begin(), basis.nodes.end(), grid.nodes.begin(),
                 [T](double z) { return T * (z + 1.0) / 2.0; });
  return grid;
}

}  // namespace fgig
