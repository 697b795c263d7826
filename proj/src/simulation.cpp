#include "graphtrack/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "graphtrack/csv.hpp"
#include "graphtrack/rng.hpp"

namespace graphtrack {

PolynomialGraphFilter builtin_filter(const std::string& name, int order) {
  PolynomialGraphFilter f;
  if (name == "Lin") {
    f.coeffs = Vector::Zero(2);
    f.coeffs[1] = 1.0;
  } else if (name == "NL4") {
    f.coeffs.resize(5);
    f.coeffs << 1.0, 1.0, 1.0, 0.1, 1.0;
  } else if (name == "NL5") {
    f.coeffs.resize(6);
    f.coeffs << 1.0, 1.0, 0.8, 0.6, 0.4, 0.2;
  } else if (name == "NLP") {
    if (order < 1) {
      throw std::invalid_argument("builtin_filter: NLP requires order >= 1");
    }
    f.coeffs.resize(order + 1);
    for (int p = 0; p <= order; ++p) f.coeffs[p] = std::pow(0.5, p);
  } else {
    throw std::invalid_argument("unknown builtin filter: " + name);
  }
  return f;
}

namespace {

void check_config(const ScenarioConfig& c, int max_edges) {
  if (c.n_nodes < 2) throw std::invalid_argument("scenario: n_nodes < 2");
  if (c.t_max < 1) throw std::invalid_argument("scenario: t_max < 1");
  if (c.change_interval < 1) {
    throw std::invalid_argument("scenario: change_interval < 1");
  }
  if (c.init_edge_count < 0 || c.init_edge_count > max_edges) {
    throw std::invalid_argument("scenario: init_edge_count out of range");
  }
  if (c.sigma_e < 0.0 || c.sigma_v < 0.0) {
    throw std::invalid_argument("scenario: negative noise std");
  }
  if (c.filter.coeffs.size() < 1) {
    throw std::invalid_argument("scenario: filter has no coefficients");
  }
}

std::vector<int> sample_distinct(Rng& rng, int population, int count) {
  std::vector<int> pool(population);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < count; ++i) {
    std::swap(pool[i], pool[rng.uniform_int(i, population - 1)]);
  }
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace

Trajectory generate(const ScenarioConfig& config) {
  const EdgeIndexMap map(config.n_nodes);
  const int max_edges = map.max_edges();
  check_config(config, max_edges);
  const Matrix incidence = build_incidence(map);
  Rng rng(config.seed);

  std::vector<char> active(max_edges, 0);
  for (int m : sample_distinct(rng, max_edges, config.init_edge_count)) {
    active[m] = 1;
  }
  Vector x = Vector::Zero(max_edges);
  for (int m = 0; m < max_edges; ++m) {
    if (active[m]) x[m] = 1.0;
  }

  Trajectory traj;
  traj.true_states.reserve(config.t_max);
  traj.inputs.reserve(config.t_max);
  traj.observations.reserve(config.t_max);
  traj.true_supports.reserve(config.t_max);

  const double new_edge_std = std::sqrt(config.new_edge_var);

  for (int t = 1; t <= config.t_max; ++t) {
    if (t > 1) {
      if (t % config.change_interval == 0) {
        for (int j = 0; j < config.changes_per_event; ++j) {
          const bool add = rng.uniform() < 0.5;
          const int n_active = static_cast<int>(
              std::count(active.begin(), active.end(), char(1)));
          if (add) {
            const int n_absent = max_edges - n_active;
            if (n_absent == 0) continue;  // complete graph: skip toggle
            int pick = rng.uniform_int(0, n_absent - 1);
            for (int m = 0; m < max_edges; ++m) {
              if (!active[m] && pick-- == 0) {
                active[m] = 1;
                x[m] = std::max(0.0,
                                config.new_edge_mean + new_edge_std * rng.normal());
                break;
              }
            }
          } else {
            if (n_active == 0) continue;  // empty graph: skip toggle
            int pick = rng.uniform_int(0, n_active - 1);
            for (int m = 0; m < max_edges; ++m) {
              if (active[m] && pick-- == 0) {
                active[m] = 0;
                x[m] = 0.0;
                break;
              }
            }
          }
        }
      }
      if (config.sigma_e > 0.0) {
        for (int m = 0; m < max_edges; ++m) {
          if (!active[m]) continue;
          x[m] = std::max(0.0, x[m] + config.sigma_e * rng.normal());
        }
      }
    }

    Vector q(config.n_nodes);
    for (int i = 0; i < config.n_nodes; ++i) q[i] = rng.normal();
    Vector y =
        apply_filter(config.filter, laplacian_from_weights(incidence, x), q);
    if (config.sigma_v > 0.0) {
      for (int i = 0; i < config.n_nodes; ++i) y[i] += config.sigma_v * rng.normal();
    }

    traj.true_states.push_back(x);
    traj.inputs.push_back(q);
    traj.observations.push_back(y);
    std::vector<int> support;
    for (int m = 0; m < max_edges; ++m) {
      if (active[m]) support.push_back(m);
    }
    traj.true_supports.push_back(std::move(support));
  }
  return traj;
}

void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out) {
  if (trajectory.t_max() == 0) throw std::invalid_argument("empty trajectory");
  const auto max_edges = trajectory.true_states[0].size();
  const auto n = trajectory.inputs[0].size();
  out << "t";
  for (Eigen::Index m = 0; m < max_edges; ++m) out << ",x" << m;
  for (Eigen::Index i = 0; i < n; ++i) out << ",q" << i;
  for (Eigen::Index i = 0; i < n; ++i) out << ",y" << i;
  out << "\n";
  for (int t = 1; t <= trajectory.t_max(); ++t) {
    out << t;
    const auto& row = trajectory;
    for (Eigen::Index m = 0; m < max_edges; ++m) {
      out << ',' << format_double(row.true_states[t - 1][m]);
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      out << ',' << format_double(row.inputs[t - 1][i]);
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      out << ',' << format_double(row.observations[t - 1][i]);
    }
    out << "\n";
  }
}

void write_trajectory_csv(const Trajectory& trajectory, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_trajectory_csv(trajectory, out);
}

Trajectory read_trajectory_csv(std::istream& in, int n_nodes) {
  const EdgeIndexMap map(n_nodes);
  const int max_edges = map.max_edges();
  Trajectory traj;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("trajectory CSV: no header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> values;
    while (std::getline(ss, cell, ',')) values.push_back(std::stod(cell));
    const std::size_t expected = 1 + max_edges + 2 * n_nodes;
    if (values.size() != expected) {
      throw std::runtime_error("trajectory CSV: bad row width");
    }
    Vector x(max_edges), q(n_nodes), y(n_nodes);
    for (int m = 0; m < max_edges; ++m) x[m] = values[1 + m];
    for (int i = 0; i < n_nodes; ++i) q[i] = values[1 + max_edges + i];
    for (int i = 0; i < n_nodes; ++i) y[i] = values[1 + max_edges + n_nodes + i];
    traj.true_supports.push_back(support_of(x, 0.0));
    traj.true_states.push_back(std::move(x));
    traj.inputs.push_back(std::move(q));
    traj.observations.push_back(std::move(y));
  }
  return traj;
}

Trajectory read_trajectory_csv(const std::string& path, int n_nodes) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_trajectory_csv(in, n_nodes);
}

}  // namespace graphtrack
