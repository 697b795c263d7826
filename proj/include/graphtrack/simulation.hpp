#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "graphtrack/common.hpp"
#include "graphtrack/filter.hpp"

namespace graphtrack {

/// Synthetic-scenario parameters. Defaults match nothing in particular;
/// experiment presets fill these in.
struct ScenarioConfig {
  int n_nodes = 10;
  int t_max = 100;
  int init_edge_count = 30;
  int change_interval = 20;   // steps between support-change events
  int changes_per_event = 1;  // edges toggled per event
  double sigma_e = 0.1;       // process-noise std (active edges only)
  double sigma_v = 0.1;       // measurement-noise std
  PolynomialGraphFilter filter;
  double new_edge_mean = 1.0;
  double new_edge_var = 0.01;
  std::uint64_t seed = 0;
};

/// Ground truth over t = 1..t_max (stored 0-based: index t-1).
struct Trajectory {
  std::vector<Vector> true_states;
  std::vector<Vector> inputs;
  std::vector<Vector> observations;
  std::vector<std::vector<int>> true_supports;

  int t_max() const { return static_cast<int>(true_states.size()); }
};

/// The paper-style observation filters:
///   Lin    -> (0, 1)
///   NL4    -> (1, 1, 1, 0.1, 1)
///   NL5    -> (1, 1, 0.8, 0.6, 0.4, 0.2)
///   NLP(P) -> (1, 1/2, ..., 1/2^P), order argument required
PolynomialGraphFilter builtin_filter(const std::string& name, int order = -1);

/// Draws a full trajectory. Deterministic given config.seed; the draw order
/// per step is: event coin/selection/weight draws (event steps only), then
/// per-active-edge process noise, then q_t, then v_t.
///
/// The initial state (t = 1) is init_edge_count uniformly chosen edges at
/// unit weight, noise-free. Support events fire at every multiple of
/// change_interval; each of changes_per_event toggles flips a fair coin
/// between adding a uniformly chosen absent edge (weight ~ N(new_edge_mean,
/// new_edge_var), clipped at 0) and removing a uniformly chosen present
/// edge. Impossible toggles (add on complete graph, remove on empty) are
/// skipped. Process noise perturbs active edges only and weights are
/// clipped at 0.
Trajectory generate(const ScenarioConfig& config);

/// Debug/interchange CSV: one row per t with columns
/// t, x[0..max_edges), q[0..n), y[0..n). Full round-trip precision.
void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out);
void write_trajectory_csv(const Trajectory& trajectory, const std::string& path);

/// Inverse of write_trajectory_csv. Supports are reconstructed as the
/// strictly positive entries of each state.
Trajectory read_trajectory_csv(std::istream& in, int n_nodes);
Trajectory read_trajectory_csv(const std::string& path, int n_nodes);

}  // namespace graphtrack
