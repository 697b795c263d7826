#pragma once

#include <utility>
#include <vector>

#include "graphtrack/common.hpp"

namespace graphtrack {

/// Canonical bijection between edge indices and node pairs of the complete
/// graph on n_nodes vertices.
///
/// Edge m corresponds to the unordered pair (n, k) with k < n, and pairs are
/// enumerated lexicographically: (1,0), (2,0), (2,1), (3,0), ...
/// All node and edge indices are 0-based. The closed form is
/// m = n(n-1)/2 + k.
class EdgeIndexMap {
 public:
  explicit EdgeIndexMap(int n_nodes);

  int n_nodes() const { return n_nodes_; }
  int max_edges() const { return max_edges_; }

  /// Pair (n, k) with k < n for edge m.
  std::pair<int, int> pair_of(int m) const;

  /// Edge index for the unordered pair {a, b}, a != b.
  int index_of(int a, int b) const;

 private:
  int n_nodes_;
  int max_edges_;
};

/// Signed incidence matrix of the complete graph, n_nodes x max_edges.
/// Column m has +1 at the smaller-index endpoint and -1 at the larger one;
/// the Laplacian B diag(x) B^T is invariant to per-column sign flips.
Matrix build_incidence(const EdgeIndexMap& map);

/// L = B diag(x) B^T, assembled edge-by-edge: edge (n,k) with weight w adds
/// w to L(k,k) and L(n,n) and -w to L(k,n), L(n,k).
Matrix laplacian_from_weights(const Matrix& incidence, const Vector& weights);

/// Indices m with weights[m] strictly greater than threshold, ascending.
std::vector<int> support_of(const Vector& weights, double threshold);

}  // namespace graphtrack
