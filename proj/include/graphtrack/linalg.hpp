#pragma once

#include "graphtrack/common.hpp"

namespace graphtrack {

/// 0.5 * (A + A^T).
inline Matrix symmetrize(const Matrix& a) {
  return 0.5 * (a + a.transpose());
}

/// Moore-Penrose pseudo-inverse via SVD. Singular values below
/// max(rows, cols) * eps * sigma_max are treated as zero.
Matrix pseudo_inverse(const Matrix& a);

/// Inverse of a symmetric positive (semi)definite matrix via LDLT.
/// If the factorization fails, retries once with 1e-10 * trace/dim added to
/// the diagonal; throws NumericalError if that also fails.
Matrix symmetric_inverse_with_jitter(const Matrix& a);

}  // namespace graphtrack
