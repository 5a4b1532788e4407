#ifndef MODSYM_LINALG_HPP
#define MODSYM_LINALG_HPP

#include <Eigen/Dense>
#include <vector>

#include "modsym/error.hpp"

namespace modsym {

/// Real embedding of a complex matrix: M = A + iB -> [[A, -B], [B, A]].
/// It is an algebra homomorphism, so products, inverses and exponentials
/// commute with the embedding.
inline Eigen::MatrixXd realify(const Eigen::MatrixXcd& m) {
  const Eigen::Index r = m.rows(), c = m.cols();
  Eigen::MatrixXd out(2 * r, 2 * c);
  out.topLeftCorner(r, c) = m.real();
  out.topRightCorner(r, c) = -m.imag();
  out.bottomLeftCorner(r, c) = m.imag();
  out.bottomRightCorner(r, c) = m.real();
  return out;
}

/// Inverse of realify. Validates the [[A, -B], [B, A]] block form; a matrix
/// outside it (e.g. a conjugate-linear map) is rejected.
inline Eigen::MatrixXcd derealify(const Eigen::MatrixXd& m, double tol = 1e-8) {
  if (m.rows() % 2 != 0 || m.cols() % 2 != 0)
    throw DomainError("derealify: dimensions must be even");
  const Eigen::Index r = m.rows() / 2, c = m.cols() / 2;
  const double scale = std::max(1.0, m.norm());
  if ((m.topLeftCorner(r, c) - m.bottomRightCorner(r, c)).norm() > tol * scale ||
      (m.topRightCorner(r, c) + m.bottomLeftCorner(r, c)).norm() > tol * scale)
    throw NumericalError("derealify: matrix is not in complex-embedded form");
  Eigen::MatrixXcd out(r, c);
  out.real() = 0.5 * (m.topLeftCorner(r, c) + m.bottomRightCorner(r, c));
  out.imag() = 0.5 * (m.bottomLeftCorner(r, c) - m.topRightCorner(r, c));
  return out;
}

inline bool is_realified_form(const Eigen::MatrixXd& m, double tol = 1e-8) {
  if (m.rows() % 2 != 0 || m.cols() % 2 != 0) return false;
  const Eigen::Index r = m.rows() / 2, c = m.cols() / 2;
  const double scale = std::max(1.0, m.norm());
  return (m.topLeftCorner(r, c) - m.bottomRightCorner(r, c)).norm() <= tol * scale &&
         (m.topRightCorner(r, c) + m.bottomLeftCorner(r, c)).norm() <= tol * scale;
}

/// Spectral norm (largest singular value).
inline double operator_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
}

/// Result of a numerical-kernel computation with an explicit rank decision.
struct NullspaceResult {
  Eigen::MatrixXd basis;           ///< orthonormal columns spanning the kernel
  Eigen::VectorXd singular_values; ///< all singular values, descending
  /// largest discarded singular value over smallest kept one; in [0,1],
  /// small means the rank decision is clear, > 0.1 is flagged upstream.
  double gap_ratio = 0.0;
  int dim() const { return static_cast<int>(basis.cols()); }
};

/// Kernel of m by SVD. Singular values <= tol * sigma_max are candidates for
/// zero; the cut is then placed at the largest ratio gap at or above that
/// threshold, so a deep spectral gap wins over the raw threshold count.
inline NullspaceResult nullspace(const Eigen::MatrixXd& m, double tol) {
  if (tol <= 0.0) throw DomainError("nullspace: tol must be positive");
  NullspaceResult res;
  const Eigen::Index n = m.cols();
  if (n == 0) return res;
  if (m.rows() == 0 || m.norm() == 0.0) {
    res.basis = Eigen::MatrixXd::Identity(n, n);
    res.singular_values = Eigen::VectorXd::Zero(n);
    return res;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  Eigen::VectorXd sv = Eigen::VectorXd::Zero(n);
  sv.head(svd.singularValues().size()) = svd.singularValues();
  res.singular_values = sv;
  const double thresh = tol * sv(0);

  // Admissible cuts keep sv(0..r-1) and discard sv(r..n-1); every discarded
  // value must sit below the threshold. Among those, pick the deepest gap.
  Eigen::Index best_r = n; // empty kernel
  double best_gap = 2.0;   // anything beats this only at an admissible cut
  for (Eigen::Index r = n - 1; r >= 0; --r) {
    if (sv(r) > thresh) break;
    const double kept = (r == 0) ? 0.0 : sv(r - 1);
    const double gap = (kept > 0.0) ? sv(r) / kept : 0.0;
    if (gap < best_gap) {
      best_gap = gap;
      best_r = r;
    }
  }
  if (best_r == n) {
    res.basis = Eigen::MatrixXd(n, 0);
    res.gap_ratio = 0.0;
    return res;
  }
  res.basis = svd.matrixV().rightCols(n - best_r);
  res.gap_ratio = (best_r == 0) ? 0.0 : sv(best_r) / sv(best_r - 1);
  return res;
}

/// Orthonormal basis of the column span of m (left singular vectors kept by
/// the same relative cut used for kernels).
inline Eigen::MatrixXd span_basis(const Eigen::MatrixXd& m, double tol = 1e-10) {
  if (m.cols() == 0 || m.norm() == 0.0) return Eigen::MatrixXd(m.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > tol * sv(0)) ++rank;
  return svd.matrixU().leftCols(rank);
}

/// Minimum-norm least-squares solution of A x = b.
inline Eigen::VectorXd min_norm_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                      double tol = 1e-10) {
  if (A.cols() == 0) return Eigen::VectorXd::Zero(0);
  if (A.norm() == 0.0) return Eigen::VectorXd::Zero(A.cols());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(tol);
  return svd.solve(b);
}

/// Orthogonal projector onto the span of orthonormal columns.
inline Eigen::MatrixXd projector(const Eigen::MatrixXd& orthonormal_cols, Eigen::Index dim) {
  if (orthonormal_cols.cols() == 0) return Eigen::MatrixXd::Zero(dim, dim);
  return orthonormal_cols * orthonormal_cols.transpose();
}

} // namespace modsym

#endif
