#pragma once

#include <vector>

#include "graphtrack/common.hpp"

namespace graphtrack {

/// Horizon-T observability data for the linear time-varying model:
/// observation matrices H_t..H_{t+T-1} and transitions F_{t+1}..F_{t+T-1}.
struct ObservabilityProblem {
  std::vector<Matrix> H_seq;  // each n_nodes x max_edges
  std::vector<Matrix> F_seq;  // each max_edges x max_edges; size = horizon-1
};

/// Stacked matrix [H_t; H_{t+1} F_{t+1}; ...; H_{t+T-1} F_{t+T-1}...F_{t+1}],
/// built with a running product of the transitions.
Matrix observability_matrix(const ObservabilityProblem& problem);

struct ObservabilityResult {
  bool observable;
  int rank;
};

/// Full-column-rank test on the stacked matrix. Numerical rank counts
/// singular values above tol * sigma_max * max(rows, cols); tol defaults to
/// machine epsilon.
ObservabilityResult is_t_step_observable(const ObservabilityProblem& problem,
                                         double tol = -1.0);

/// Smallest horizon T with T * n_nodes >= n_nodes(n_nodes-1)/2, i.e.
/// ceil((n_nodes - 1) / 2).
int min_observability_horizon(int n_nodes);

}  // namespace graphtrack
