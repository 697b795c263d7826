#include "graphtrack/linalg.hpp"

#include <limits>

namespace graphtrack {

Matrix pseudo_inverse(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double tol = std::max(a.rows(), a.cols()) *
                     std::numeric_limits<double>::epsilon() *
                     (sv.size() > 0 ? sv[0] : 0.0);
  Vector inv = Vector::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > tol) inv[i] = 1.0 / sv[i];
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

Matrix symmetric_inverse_with_jitter(const Matrix& a) {
  const auto n = a.rows();
  const Matrix identity = Matrix::Identity(n, n);
  Eigen::LDLT<Matrix> ldlt(a);
  if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
    Matrix inv = ldlt.solve(identity);
    if (inv.allFinite()) return inv;
  }
  const double jitter = 1e-10 * a.trace() / static_cast<double>(n);
  Matrix regularized = a;
  regularized.diagonal().array() += jitter > 0.0 ? jitter : 1e-12;
  ldlt.compute(regularized);
  Matrix inv = ldlt.solve(identity);
  if (ldlt.info() != Eigen::Success || !inv.allFinite()) {
    throw NumericalError("symmetric inverse failed even with jitter");
  }
  return inv;
}

}  // namespace graphtrack
