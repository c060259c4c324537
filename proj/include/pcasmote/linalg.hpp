#pragma once

// Small dense linear-algebra layer used by PCA: column statistics,
// covariance/correlation matrices and a cyclic Jacobi eigensolver for
// symmetric input. Everything is templated on the scalar type and works on
// any Eigen dense expression.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "pcasmote/errors.hpp"

namespace pcasmote {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixXr = DenseMatrix<double>;
using VectorXr = Vector<double>;

/// Column standard deviations below this are treated as 1 when standardizing.
inline constexpr double kStdFloor = 1e-12;

template <typename Scalar>
struct EigenDecomposition {
  Vector<Scalar> eigenvalues;        // descending
  DenseMatrix<Scalar> eigenvectors;  // column j pairs with eigenvalues(j)
  int sweeps = 0;
};

struct JacobiOptions {
  double relative_tolerance = 1e-12;
  int max_sweeps = 100;
  double symmetry_tolerance = 1e-9;
};

template <typename Derived>
Vector<typename Derived::Scalar> mean_vector(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() < 1) throw ArgumentError("mean_vector: matrix has no rows");
  return m.colwise().mean().transpose();
}

/// Sample covariance (divisor n-1). The result is symmetrized exactly.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> covariance_matrix(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() < 2) throw ArgumentError("covariance_matrix: need at least 2 rows, got " + std::to_string(m.rows()));
  const DenseMatrix<Scalar> centered = m.rowwise() - m.colwise().mean();
  DenseMatrix<Scalar> cov = (centered.transpose() * centered) / Scalar(m.rows() - 1);
  return (cov + cov.transpose()) / Scalar(2);
}

/// Sample standard deviations with the floor rule applied (sd < kStdFloor -> 1).
template <typename Derived>
Vector<typename Derived::Scalar> floored_std(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() < 2) throw ArgumentError("floored_std: need at least 2 rows");
  const DenseMatrix<Scalar> centered = m.rowwise() - m.colwise().mean();
  Vector<Scalar> sd = (centered.colwise().squaredNorm() / Scalar(m.rows() - 1)).cwiseSqrt().transpose();
  for (Eigen::Index j = 0; j < sd.size(); ++j)
    if (!(sd(j) >= Scalar(kStdFloor))) sd(j) = Scalar(1);
  return sd;
}

/// Pearson correlation as the covariance of z-scored columns. Constant columns
/// z-score to zero, so their row and column (diagonal included) are zero.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> correlation_matrix(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() < 2) throw ArgumentError("correlation_matrix: need at least 2 rows, got " + std::to_string(m.rows()));
  const Vector<Scalar> sd = floored_std(m);
  const DenseMatrix<Scalar> z =
      (m.rowwise() - m.colwise().mean()).array().rowwise() / sd.transpose().array();
  DenseMatrix<Scalar> corr = covariance_matrix(z);
  for (Eigen::Index i = 0; i < corr.rows(); ++i)
    for (Eigen::Index j = 0; j < corr.cols(); ++j)
      corr(i, j) = std::clamp(corr(i, j), Scalar(-1), Scalar(1));
  return corr;
}

namespace detail {

template <typename Scalar>
Scalar off_diagonal_norm(const DenseMatrix<Scalar>& a) {
  Scalar sum = 0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (i != j) sum += a(i, j) * a(i, j);
  return std::sqrt(sum);
}

// Flip each column so its largest-magnitude entry is nonnegative (first index wins ties).
template <typename Scalar>
void canonicalize_signs(DenseMatrix<Scalar>& v) {
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < v.rows(); ++i)
      if (std::abs(v(i, j)) > std::abs(v(best, j))) best = i;
    if (v(best, j) < Scalar(0)) v.col(j) = -v.col(j);
  }
}

}  // namespace detail

/// Cyclic Jacobi eigensolver for a symmetric matrix.
///
/// Sweeps over the strict upper triangle in row-major order, annihilating each
/// off-diagonal pair with a plane rotation, until the off-diagonal Frobenius
/// norm drops to `relative_tolerance * ||A||_F`. Eigenvalues come back sorted
/// descending (stable on ties) and each eigenvector is sign-normalized so that
/// its largest-magnitude entry is nonnegative.
template <typename Derived>
EigenDecomposition<typename Derived::Scalar> jacobi_eigen(const Eigen::MatrixBase<Derived>& input,
                                                          const JacobiOptions& opts = {}) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = input.rows();
  if (input.cols() != n)
    throw ArgumentError("jacobi_eigen: matrix is " + std::to_string(n) + "x" + std::to_string(input.cols()) +
                        ", expected square");
  DenseMatrix<Scalar> a = input;
  if (!a.allFinite()) throw ArgumentError("jacobi_eigen: matrix has non-finite entries");
  const Scalar asym = n ? (a - a.transpose()).cwiseAbs().maxCoeff() : Scalar(0);
  if (asym > Scalar(opts.symmetry_tolerance))
    throw ArgumentError("jacobi_eigen: matrix is not symmetric (max asymmetry " + std::to_string(double(asym)) + ")");
  a = (a + a.transpose()) / Scalar(2);

  DenseMatrix<Scalar> v = DenseMatrix<Scalar>::Identity(n, n);
  const Scalar threshold = Scalar(opts.relative_tolerance) * a.norm();

  int sweep = 0;
  Scalar off = detail::off_diagonal_norm(a);
  while (off > threshold) {
    if (sweep >= opts.max_sweeps)
      throw NumericalError("jacobi_eigen: no convergence after " + std::to_string(opts.max_sweeps) +
                           " sweeps, off-diagonal norm " + std::to_string(double(off)));
    ++sweep;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        if (apq == Scalar(0)) continue;
        const Scalar theta = (a(q, q) - a(p, p)) / (Scalar(2) * apq);
        const Scalar t = (theta >= Scalar(0) ? Scalar(1) : Scalar(-1)) /
                         (std::abs(theta) + std::sqrt(theta * theta + Scalar(1)));
        const Scalar c = Scalar(1) / std::sqrt(t * t + Scalar(1));
        const Scalar s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar akp = a(k, p);
          const Scalar akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar apk = a(p, k);
          const Scalar aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = Scalar(0);
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar vkp = v(k, p);
          const Scalar vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    off = detail::off_diagonal_norm(a);
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index l, Eigen::Index r) { return a(l, l) > a(r, r); });

  EigenDecomposition<Scalar> out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.eigenvalues(j) = a(order[static_cast<std::size_t>(j)], order[static_cast<std::size_t>(j)]);
    out.eigenvectors.col(j) = v.col(order[static_cast<std::size_t>(j)]);
  }
  detail::canonicalize_signs(out.eigenvectors);
  out.sweeps = sweep;
  return out;
}

}  // namespace pcasmote
