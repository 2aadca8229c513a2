#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace fgig {

class SingularSystemError : public std::runtime_error {
 public:
  SingularSystemError(const std::string& what, int mode) : std::runtime_error(what), mode_(mode) {}
  /// Fourier mode whose system failed, or -1 when not attached to a mode.
  [[nodiscard]] int mode() const { return mode_; }

 private:
  int mode_;
};

/// Dense LU with partial pivoting for small complex systems.
///
/// Factorization fails with SingularSystemError when a pivot falls below
/// pivot_tolerance * ||A||_inf.
class ComplexLU {
 public:
  static constexpr double kPivotTolerance = 1e-14;

  explicit ComplexLU(const Eigen::MatrixXcd& A, int mode = -1);

  [[nodiscard]] Eigen::VectorXcd solve(const Eigen::VectorXcd& b) const;
  [[nodiscard]] double smallest_pivot() const { return smallest_pivot_; }

 private:
  Eigen::MatrixXcd lu_;
  std::vector<int> perm_;
  double smallest_pivot_ = 0.0;
};

/// Singular values by one-sided (Hestenes) Jacobi rotations, descending.
/// Throws std::invalid_argument for non-square input.
[[nodiscard]] std::vector<double> singular_values(const Eigen::MatrixXd& A);
[[nodiscard]] std::vector<double> singular_values(const Eigen::MatrixXcd& A);

/// Full one-sided Jacobi SVD A = U diag(s) V^H for square A.
struct JacobiSVD {
  Eigen::MatrixXcd U;
  std::vector<double> sigma;
  Eigen::MatrixXcd V;
};
[[nodiscard]] JacobiSVD jacobi_svd(const Eigen::MatrixXcd& A);

}  // namespace fgig
