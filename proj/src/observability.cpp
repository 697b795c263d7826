#include "graphtrack/observability.hpp"

#include <limits>

namespace graphtrack {

Matrix observability_matrix(const ObservabilityProblem& problem) {
  if (problem.H_seq.empty()) {
    throw std::invalid_argument("observability: empty H sequence");
  }
  if (problem.F_seq.size() + 1 != problem.H_seq.size()) {
    throw std::invalid_argument(
        "observability: need exactly horizon-1 transition matrices");
  }
  const auto rows_per_block = problem.H_seq[0].rows();
  const auto cols = problem.H_seq[0].cols();
  const auto horizon = static_cast<Eigen::Index>(problem.H_seq.size());
  Matrix stacked(rows_per_block * horizon, cols);

  Matrix product;  // F_{t+i} ... F_{t+1}
  for (Eigen::Index i = 0; i < horizon; ++i) {
    const Matrix& h = problem.H_seq[static_cast<std::size_t>(i)];
    if (h.rows() != rows_per_block || h.cols() != cols) {
      throw std::invalid_argument("observability: inconsistent H dimensions");
    }
    if (i == 0) {
      stacked.middleRows(0, rows_per_block) = h;
      continue;
    }
    const Matrix& f = problem.F_seq[static_cast<std::size_t>(i - 1)];
    if (f.rows() != cols || f.cols() != cols) {
      throw std::invalid_argument("observability: inconsistent F dimensions");
    }
    if (i == 1) {
      product = f;
    } else {
      product = f * product;
    }
    stacked.middleRows(i * rows_per_block, rows_per_block) = h * product;
  }
  return stacked;
}

ObservabilityResult is_t_step_observable(const ObservabilityProblem& problem,
                                         double tol) {
  const Matrix stacked = observability_matrix(problem);
  if (tol < 0.0) tol = std::numeric_limits<double>::epsilon();
  Eigen::BDCSVD<Matrix> svd(stacked);
  const auto& sv = svd.singularValues();
  const double cutoff =
      tol * (sv.size() > 0 ? sv[0] : 0.0) *
      static_cast<double>(std::max(stacked.rows(), stacked.cols()));
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > cutoff) ++rank;
  }
  return {rank == static_cast<int>(stacked.cols()), rank};
}

int min_observability_horizon(int n_nodes) {
  if (n_nodes < 2) {
    throw std::invalid_argument("min_observability_horizon: n_nodes < 2");
  }
  return (n_nodes - 1 + 1) / 2;  // ceil((n_nodes-1)/2)
}

}  // namespace graphtrack
