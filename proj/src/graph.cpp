#include "graphtrack/graph.hpp"

#include <cmath>

namespace graphtrack {

EdgeIndexMap::EdgeIndexMap(int n_nodes) : n_nodes_(n_nodes) {
  if (n_nodes < 2) {
    throw std::invalid_argument("EdgeIndexMap requires at least 2 nodes, got " +
                                std::to_string(n_nodes));
  }
  max_edges_ = n_nodes * (n_nodes - 1) / 2;
}

std::pair<int, int> EdgeIndexMap::pair_of(int m) const {
  if (m < 0 || m >= max_edges_) {
    throw std::invalid_argument("edge index out of range: " + std::to_string(m));
  }
  // Invert m = n(n-1)/2 + k, 0 <= k < n. The float estimate of n can be off
  // by one near triangular numbers; fix up exactly.
  int n = static_cast<int>((1.0 + std::sqrt(1.0 + 8.0 * m)) / 2.0);
  while (n * (n - 1) / 2 > m) --n;
  while ((n + 1) * n / 2 <= m) ++n;
  int k = m - n * (n - 1) / 2;
  return {n, k};
}

int EdgeIndexMap::index_of(int a, int b) const {
  if (a == b || a < 0 || b < 0 || a >= n_nodes_ || b >= n_nodes_) {
    throw std::invalid_argument("invalid node pair (" + std::to_string(a) +
                                ", " + std::to_string(b) + ")");
  }
  int n = a > b ? a : b;
  int k = a > b ? b : a;
  return n * (n - 1) / 2 + k;
}

Matrix build_incidence(const EdgeIndexMap& map) {
  Matrix b = Matrix::Zero(map.n_nodes(), map.max_edges());
  for (int m = 0; m < map.max_edges(); ++m) {
    auto [n, k] = map.pair_of(m);
    b(k, m) = 1.0;
    b(n, m) = -1.0;
  }
  return b;
}

Matrix laplacian_from_weights(const Matrix& incidence, const Vector& weights) {
  const auto n = incidence.rows();
  if (incidence.cols() != weights.size()) {
    throw std::invalid_argument("incidence has " +
                                std::to_string(incidence.cols()) +
                                " columns but weight vector has length " +
                                std::to_string(weights.size()));
  }
  Matrix lap = Matrix::Zero(n, n);
  for (Eigen::Index m = 0; m < weights.size(); ++m) {
    const double w = weights[m];
    if (w == 0.0) continue;
    // Endpoints are the two nonzero rows of column m.
    int a = -1, b = -1;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (incidence(r, m) != 0.0) {
        (a < 0 ? a : b) = static_cast<int>(r);
      }
    }
    lap(a, a) += w;
    lap(b, b) += w;
    lap(a, b) -= w;
    lap(b, a) -= w;
  }
  return lap;
}

std::vector<int> support_of(const Vector& weights, double threshold) {
  if (threshold < 0.0) {
    throw std::invalid_argument("support threshold must be nonnegative");
  }
  std::vector<int> out;
  for (Eigen::Index m = 0; m < weights.size(); ++m) {
    if (weights[m] > threshold) out.push_back(static_cast<int>(m));
  }
  return out;
}

}  // namespace graphtrack
