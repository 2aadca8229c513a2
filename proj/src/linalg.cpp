#include "fgig/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace fgig {

ComplexLU::ComplexLU(const Eigen::MatrixXcd& A, int mode) : lu_(A), perm_(A.rows()) {
  if (A.rows() != A.cols()) throw std::invalid_argument("ComplexLU: matrix must be square");
  const int n = static_cast<int>(A.rows());
  std::iota(perm_.begin(), perm_.end(), 0);
  const double norm_inf = A.cwiseAbs().rowwise().sum().maxCoeff();
  const double threshold = kPivotTolerance * norm_inf;
  smallest_pivot_ = std::numeric_limits<double>::infinity();

  for (int k = 0; k < n; ++k) {
    int pivot_row = k;
    double best = std::abs(lu_(k, k));
    for (int r = k + 1; r < n; ++r) {
      const double v = std::abs(lu_(r, k));
      if (v > best) {
        best = v;
        pivot_row = r;
      }
    }
    smallest_pivot_ = std::min(smallest_pivot_, best);
    if (!(best > threshold)) {
      throw SingularSystemError("singular or ill-conditioned system" +
                                    (mode >= 0 ? " for mode n=" + std::to_string(mode) : std::string{}) +
                                    ": pivot " + std::to_string(best) + " below 1e-14*||A||",
                                mode);
    }
    if (pivot_row != k) {
      lu_.row(k).swap(lu_.row(pivot_row));
      std::swap(perm_[k], perm_[pivot_row]);
    }
    const std::complex<double> inv = 1.0 / lu_(k, k);
    for (int r = k + 1; r < n; ++r) {
      const std::complex<double> factor = lu_(r, k) * inv;
      lu_(r, k) = factor;
      for (int c = k + 1; c < n; ++c) lu_(r, c) -= factor * lu_(k, c);
    }
  }
}

Eigen::VectorXcd ComplexLU::solve(const Eigen::VectorXcd& b) const {
  const int n = static_cast<int>(lu_.rows());
  if (b.size() != n) throw std::invalid_argument("ComplexLU::solve: size mismatch");
  Eigen::VectorXcd x(n);
  for (int i = 0; i < n; ++i) {
    std::complex<double> acc = b(perm_[i]);
    for (int j = 0; j < i; ++j) acc -= lu_(i, j) * x(j);
    x(i) = acc;
  }
  for (int i = n - 1; i >= 0; --i) {
    std::complex<double> acc = x(i);
    for (int j = i + 1; j < n; ++j) acc -= lu_(i, j) * x(j);
    x(i) = acc / lu_(i, i);
  }
  return x;
}

JacobiSVD jacobi_svd(const Eigen::MatrixXcd& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("singular_values: matrix must be square");
  const int n = static_cast<int>(A.cols());
  Eigen::MatrixXcd W = A;
  Eigen::MatrixXcd V = Eigen::MatrixXcd::Identity(n, n);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr int kMaxSweeps = 80;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double alpha = W.col(p).squaredNorm();
        const double beta = W.col(q).squaredNorm();
        const std::complex<double> gamma = W.col(p).dot(W.col(q));  // w_p^H w_q
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        // Rotate column q by the phase of gamma so the pair becomes a real
        // 2x2 problem, then apply the classical Jacobi rotation.
        const std::complex<double> phase = std::conj(gamma) / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (int i = 0; i < n; ++i) {
          const std::complex<double> wp = W(i, p);
          const std::complex<double> wq = phase * W(i, q);
          W(i, p) = c * wp - s * wq;
          W(i, q) = s * wp + c * wq;
          const std::complex<double> vp = V(i, p);
          const std::complex<double> vq = phase * V(i, q);
          V(i, p) = c * vp - s * vq;
          V(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> norms(n);
  for (int j = 0; j < n; ++j) norms[j] = W.col(j).norm();
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return norms[a] > norms[b]; });

  JacobiSVD out;
  out.U = Eigen::MatrixXcd::Zero(n, n);
  out.V = Eigen::MatrixXcd::Zero(n, n);
  out.sigma.resize(n);
  for (int k = 0; k < n; ++k) {
    const int j = order[k];
    out.sigma[k] = norms[j];
    out.V.col(k) = V.col(j);
    if (norms[j] > 0.0) out.U.col(k) = W.col(j) / norms[j];
  }
  return out;
}

std::vector<double> singular_values(const Eigen::MatrixXcd& A) { return jacobi_svd(A).sigma; }

std::vector<double> singular_values(const Eigen::MatrixXd& A) {
  return singular_values(Eigen::MatrixXcd(A.cast<std::complex<double>>()));
}

}  // namespace fgig
