#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "ctrlmetrics/errors.hpp"

namespace ctrlmetrics {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

namespace defaults {
inline constexpr double kRankTol = 1e-8;          // relative singular-value cutoff
inline constexpr double kInvertibilityTol = 1e-10;  // sigma_min/sigma_max below this = singular
inline constexpr double kDefinitenessScale = 1e-8;  // lambda_min > scale*trace/m = positive definite
inline constexpr long kNodeCap = 1'000'000;         // path-tree size guard
inline constexpr long kControlCoordCap = 100'000;   // pathspace operator size guard
}  // namespace defaults

/// Numerical rank: number of singular values >= tol * sigma_max.
inline int numerical_rank(const Matrix& M, double tol = defaults::kRankTol) {
  if (M.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(M);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) <= 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) >= tol * s(0)) ++r;
  return r;
}

/// Orthonormal basis of the column space (columns with sigma >= tol*sigma_max).
inline Matrix column_space_basis(const Matrix& M, double tol = defaults::kRankTol) {
  if (M.size() == 0 || M.norm() == 0.0) return Matrix(M.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) >= tol * s(0)) ++r;
  return svd.matrixU().leftCols(r);
}

/// Orthonormal basis of ker(M).
inline Matrix kernel_basis(const Matrix& M, double tol = defaults::kRankTol) {
  if (M.rows() == 0) return Matrix::Identity(M.cols(), M.cols());
  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (smax > 0.0 && s(i) >= tol * smax) ++r;
  return svd.matrixV().rightCols(M.cols() - r);
}

/// Minimum-norm least-squares solution of A x = b.
inline Matrix min_norm_solve(const Matrix& A, const Matrix& b, double tol = defaults::kRankTol) {
  if (A.size() == 0) return Matrix::Zero(A.cols(), b.cols());
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(A.rows(), A.cols());
  cod.setThreshold(tol);
  cod.compute(A);
  return cod.solve(b);
}

inline bool is_invertible(const Matrix& M, double tol = defaults::kInvertibilityTol) {
  if (M.rows() != M.cols() || M.rows() == 0) return false;
  Eigen::JacobiSVD<Matrix> svd(M);
  const auto& s = svd.singularValues();
  return s(0) > 0.0 && s(s.size() - 1) / s(0) >= tol;
}

inline Matrix symmetrized(const Matrix& M) { return 0.5 * (M + M.transpose()); }

inline double min_eigenvalue(const Matrix& sym) {
  if (sym.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(sym), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

inline double max_eigenvalue(const Matrix& sym) {
  if (sym.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(sym), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

/// lambda_min >= -slack * ||M||, the working definition of "numerically PSD".
inline bool is_psd(const Matrix& sym, double slack = 1e-8) {
  const double scale = std::max(1.0, sym.norm());
  return min_eigenvalue(sym) >= -slack * scale;
}

/// Positive-definiteness verdict used for controllability metrics:
/// lambda_min > scale * trace / m.
inline bool is_definite_metric(const Matrix& sym, double scale = defaults::kDefinitenessScale) {
  if (sym.rows() == 0) return false;
  const double tol = scale * sym.trace() / static_cast<double>(sym.rows());
  return min_eigenvalue(sym) > tol;
}

}  // namespace ctrlmetrics
