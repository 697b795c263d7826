#include "graphtrack/metrics.hpp"

#include <cstddef>

namespace graphtrack {

double normalized_mse(const Vector& estimate, const Vector& truth) {
  if (estimate.size() != truth.size()) {
    throw std::invalid_argument("normalized_mse: length mismatch");
  }
  return (estimate - truth).squaredNorm() / static_cast<double>(estimate.size());
}

double eier(const std::vector<int>& est_support,
            const std::vector<int>& true_support, int n_nodes) {
  // Supports are sorted ascending (as produced by support_of).
  std::size_t i = 0, j = 0, sym_diff = 0;
  while (i < est_support.size() && j < true_support.size()) {
    if (est_support[i] == true_support[j]) {
      ++i;
      ++j;
    } else if (est_support[i] < true_support[j]) {
      ++sym_diff;
      ++i;
    } else {
      ++sym_diff;
      ++j;
    }
  }
  sym_diff += (est_support.size() - i) + (true_support.size() - j);
  const double denom = static_cast<double>(n_nodes) * (n_nodes - 1);
  return 100.0 * static_cast<double>(sym_diff) / denom;
}

}  // namespace graphtrack
