#pragma once

#include <vector>

#include "graphtrack/common.hpp"

namespace graphtrack {

/// ||estimate - truth||^2 / max_edges.
double normalized_mse(const Vector& estimate, const Vector& truth);

/// Edge identification error rate in percent:
/// |est_support XOR true_support| / (N(N-1)) * 100.
///
/// Note the denominator is N(N-1) = 2 * max_edges, so a complete support
/// miss over all candidate edges tops out at 50% + 50% = 100% only when
/// both sets together cover every edge twice; a full swap of max_edges/2
/// edges yields 50%.
double eier(const std::vector<int>& est_support,
            const std::vector<int>& true_support, int n_nodes);

}  // namespace graphtrack
