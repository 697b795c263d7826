#include "graphtrack/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "graphtrack/csv.hpp"
#include "graphtrack/metrics.hpp"
#include "graphtrack/observability.hpp"
#include "graphtrack/rng.hpp"

namespace graphtrack {

using nlohmann::json;

std::string tracker_name(TrackerKind kind) {
  switch (kind) {
    case TrackerKind::Ekf: return "EKF";
    case TrackerKind::GspEkf: return "GSP-EKF";
    case TrackerKind::Oracle: return "Oracle";
    case TrackerKind::LinearKf: return "LinearKF";
  }
  throw std::invalid_argument("unknown tracker kind");
}

TrackerKind tracker_from_name(const std::string& name) {
  if (name == "EKF") return TrackerKind::Ekf;
  if (name == "GSP-EKF") return TrackerKind::GspEkf;
  if (name == "Oracle") return TrackerKind::Oracle;
  if (name == "LinearKF") return TrackerKind::LinearKf;
  throw std::invalid_argument("unknown tracker: " + name);
}

namespace {

void validate(const ExperimentConfig& cfg) {
  if (cfg.mc_trials < 1) throw std::invalid_argument("mc_trials must be >= 1");
  if (cfg.trackers.empty()) {
    throw std::invalid_argument("experiment needs at least one tracker");
  }
  if (cfg.init_estimate != "ones" && cfg.init_estimate != "zeros") {
    throw std::invalid_argument("init_estimate must be \"ones\" or \"zeros\"");
  }
  for (const auto& spec : cfg.trackers) {
    if (spec.kind == TrackerKind::LinearKf && cfg.scenario.filter.order() != 1) {
      throw std::invalid_argument(
          "LinearKF requires a first-order filter (two coefficients)");
    }
  }
}

struct TrialOutput {
  std::vector<StepRecord> rows;
  std::vector<TimingRecord> timing;
};

TrialOutput run_trial(const ExperimentConfig& cfg, int trial,
                      const EdgeIndexMap& map, const Matrix& incidence) {
  ScenarioConfig scen = cfg.scenario;
  scen.seed = Rng::substream_seed(cfg.seed, static_cast<std::uint64_t>(trial));
  const Trajectory traj = generate(scen);

  const int max_edges = map.max_edges();
  const int t_max = traj.t_max();
  // sigma_v floored: every Jacobian column sums to zero (1^T L = 0), so
  // S = H Sigma H^T + R is structurally singular at R = 0.
  const NoiseModel noise =
      NoiseModel::isotropic(max_edges, cfg.resolved_q_sigma(), scen.n_nodes,
                            std::max(scen.sigma_v, 1e-6));
  const StateTransition trans = StateTransition::identity();
  const Matrix identity_f = Matrix::Identity(max_edges, max_edges);

  TrialOutput out;
  out.rows.reserve(cfg.trackers.size() * t_max);
  out.timing.reserve(cfg.trackers.size() * t_max);

  for (const auto& spec : cfg.trackers) {
    TrackerState state;
    if (spec.kind == TrackerKind::Oracle) {
      state.estimate = traj.true_states[0];
      SupportMask mask{traj.true_supports[0]};
      state.covariance = cfg.init_covariance_scale *
                         Matrix(mask.indicator(max_edges).asDiagonal());
    } else {
      state.estimate = cfg.init_estimate == "ones" ? Vector::Ones(max_edges)
                                                   : Vector::Zero(max_edges);
      state.covariance =
          cfg.init_covariance_scale * Matrix::Identity(max_edges, max_edges);
    }

    for (int t = 1; t <= t_max; ++t) {
      const Vector& q = traj.inputs[t - 1];
      const Vector& y = traj.observations[t - 1];
      bool ok = true;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        switch (spec.kind) {
          case TrackerKind::Ekf:
            state = ekf_step(state, trans, noise, scen.filter, incidence, map,
                             q, y);
            break;
          case TrackerKind::GspEkf:
            state = gsp_ekf_step(state, trans, noise, scen.filter, incidence,
                                 map, q, y, spec.ista);
            break;
          case TrackerKind::Oracle: {
            SupportMask mask{traj.true_supports[t - 1]};
            Vector jump = Vector::Zero(max_edges);
            if (t >= 2) {
              const auto& prev = traj.true_supports[t - 2];
              for (int m : traj.true_supports[t - 1]) {
                if (!std::binary_search(prev.begin(), prev.end(), m)) {
                  jump[m] = scen.new_edge_mean;
                }
              }
            }
            state = oracle_step(state, trans, noise, scen.filter, incidence,
                                map, q, y, mask, jump);
            break;
          }
          case TrackerKind::LinearKf:
            state = linear_kf_step(state, identity_f, noise,
                                   scen.filter.coeffs[0], scen.filter.coeffs[1],
                                   incidence, q, y);
            break;
        }
      } catch (const NumericalError&) {
        ok = false;
      }
      const auto t1 = std::chrono::steady_clock::now();
      const double seconds =
          std::chrono::duration<double>(t1 - t0).count();

      if (!ok) {
        out.rows.push_back({trial, t, spec.kind,
                            std::numeric_limits<double>::quiet_NaN(),
                            std::numeric_limits<double>::quiet_NaN(), false});
        out.timing.push_back({trial, t, spec.kind, seconds});
        break;  // this tracker is done for the trial
      }
      const double nmse = normalized_mse(state.estimate, traj.true_states[t - 1]);
      const double e = eier(support_of(state.estimate, cfg.eier_threshold),
                            traj.true_supports[t - 1], scen.n_nodes);
      out.rows.push_back({trial, t, spec.kind, nmse, e, true});
      out.timing.push_back({trial, t, spec.kind, seconds});
    }
  }
  return out;
}

}  // namespace

std::vector<double> ExperimentResult::nmse_series(TrackerKind kind) const {
  std::vector<double> series;
  for (const auto& a : aggregate) {
    if (a.tracker == kind) {
      series.resize(std::max<std::size_t>(series.size(), a.t), 0.0);
      series[a.t - 1] = a.nmse_mean;
    }
  }
  return series;
}

std::vector<double> ExperimentResult::eier_series(TrackerKind kind) const {
  std::vector<double> series;
  for (const auto& a : aggregate) {
    if (a.tracker == kind) {
      series.resize(std::max<std::size_t>(series.size(), a.t), 0.0);
      series[a.t - 1] = a.eier_mean;
    }
  }
  return series;
}

ExperimentResult run_experiment(const ExperimentConfig& config, int parallel) {
  validate(config);
  const EdgeIndexMap map(config.scenario.n_nodes);
  const Matrix incidence = build_incidence(map);

  std::vector<TrialOutput> outputs(config.mc_trials);
  const int workers =
      std::max(1, std::min(parallel, config.mc_trials));
  if (workers == 1) {
    for (int i = 0; i < config.mc_trials; ++i) {
      outputs[i] = run_trial(config, i, map, incidence);
    }
  } else {
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&]() {
      try {
        for (;;) {
          const int i = next.fetch_add(1);
          if (i >= config.mc_trials || failed.load()) break;
          outputs[i] = run_trial(config, i, map, incidence);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  }

  ExperimentResult result;
  result.config = config;
  for (auto& trial : outputs) {
    result.rows.insert(result.rows.end(), trial.rows.begin(), trial.rows.end());
    result.timing.insert(result.timing.end(), trial.timing.begin(),
                         trial.timing.end());
  }

  // Per-(t, tracker) means over successful rows, in config tracker order.
  const int t_max = config.scenario.t_max;
  const int n_trackers = static_cast<int>(config.trackers.size());
  std::vector<double> nmse_sum(t_max * n_trackers, 0.0);
  std::vector<double> eier_sum(t_max * n_trackers, 0.0);
  std::vector<int> count(t_max * n_trackers, 0);
  auto slot = [&](TrackerKind kind, int t) {
    for (int k = 0; k < n_trackers; ++k) {
      if (config.trackers[k].kind == kind) return k * t_max + (t - 1);
    }
    throw std::logic_error("tracker not in config");
  };
  for (const auto& row : result.rows) {
    if (!row.ok) continue;
    const int s = slot(row.tracker, row.t);
    nmse_sum[s] += row.nmse;
    eier_sum[s] += row.eier;
    count[s] += 1;
  }
  for (int t = 1; t <= t_max; ++t) {
    for (int k = 0; k < n_trackers; ++k) {
      const int s = k * t_max + (t - 1);
      const int n = count[s];
      result.aggregate.push_back(
          {t, config.trackers[k].kind,
           n > 0 ? nmse_sum[s] / n : std::numeric_limits<double>::quiet_NaN(),
           n > 0 ? eier_sum[s] / n : std::numeric_limits<double>::quiet_NaN(),
           n});
    }
  }
  return result;
}

void write_experiment_csv(const ExperimentResult& result, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);

  {
    std::ofstream raw(dir + "/raw.csv");
    if (!raw) throw std::runtime_error("cannot write " + dir + "/raw.csv");
    raw << "trial,t,tracker,nmse,eier,status\n";
    for (const auto& row : result.rows) {
      raw << row.trial << ',' << row.t << ',' << tracker_name(row.tracker)
          << ',' << format_double(row.nmse) << ',' << format_double(row.eier)
          << ',' << (row.ok ? "ok" : "failed") << "\n";
    }
  }
  {
    std::ofstream agg(dir + "/aggregate.csv");
    if (!agg) throw std::runtime_error("cannot write " + dir + "/aggregate.csv");
    agg << "t,tracker,nmse,nmse_db,eier,trials_ok\n";
    for (const auto& a : result.aggregate) {
      const double db = 10.0 * std::log10(a.nmse_mean);
      agg << a.t << ',' << tracker_name(a.tracker) << ','
          << format_double(a.nmse_mean) << ',' << format_double(db) << ','
          << format_double(a.eier_mean) << ',' << a.trials_ok << "\n";
    }
  }
  {
    std::ofstream timing(dir + "/timing.csv");
    if (!timing) throw std::runtime_error("cannot write " + dir + "/timing.csv");
    timing << "trial,t,tracker,seconds\n";
    for (const auto& row : result.timing) {
      timing << row.trial << ',' << row.t << ',' << tracker_name(row.tracker)
             << ',' << format_double(row.seconds) << "\n";
    }
  }
  {
    std::ofstream cfg(dir + "/config.json");
    if (!cfg) throw std::runtime_error("cannot write " + dir + "/config.json");
    cfg << experiment_to_json(result.config) << "\n";
  }
}

void run_jacobian_bench(const std::vector<int>& n_list,
                        const std::vector<int>& p_list, int repeats,
                        std::uint64_t seed, std::ostream& out) {
  out << "n,p,method,median_seconds\n";
  if (repeats <= 0) return;
  for (int n : n_list) {
    if (n < 2) throw std::invalid_argument("bench: n must be >= 2");
    const EdgeIndexMap map(n);
    const Matrix incidence = build_incidence(map);
    std::uint64_t instance = 0;
    for (int p : p_list) {
      if (p < 1) throw std::invalid_argument("bench: p must be >= 1");
      Rng rng = Rng::substream(seed, (static_cast<std::uint64_t>(n) << 32) | instance++);
      Vector weights(map.max_edges());
      for (int m = 0; m < map.max_edges(); ++m) weights[m] = 2.0 * rng.uniform();
      Vector q(n);
      for (int i = 0; i < n; ++i) q[i] = rng.normal();
      PolynomialGraphFilter filter = builtin_filter("NLP", p);
      const Matrix lap = laplacian_from_weights(incidence, weights);

      double sink = 0.0;
      auto median_time = [&](auto&& fn) {
        std::vector<double> times(repeats);
        fn();  // warmup
        for (int r = 0; r < repeats; ++r) {
          const auto t0 = std::chrono::steady_clock::now();
          sink += fn();
          const auto t1 = std::chrono::steady_clock::now();
          times[r] = std::chrono::duration<double>(t1 - t0).count();
        }
        std::sort(times.begin(), times.end());
        return times[repeats / 2];
      };
      const double dp_med = median_time(
          [&] { return jacobian_dp(filter, map, lap, q).sum(); });
      const double naive_med = median_time(
          [&] { return jacobian_naive(filter, weights, incidence, q).sum(); });
      if (!std::isfinite(sink)) std::cerr << "bench: non-finite output\n";
      out << n << ',' << p << ",dp," << format_double(dp_med) << "\n";
      out << n << ',' << p << ",naive," << format_double(naive_med) << "\n";
    }
  }
}

void run_observability_study(int n_nodes, int t_lo, int t_hi, int trials,
                             std::uint64_t seed, std::ostream& out) {
  if (n_nodes < 2) throw std::invalid_argument("observability study: n < 2");
  if (t_lo < 1 || t_hi < t_lo) {
    throw std::invalid_argument("observability study: bad horizon range");
  }
  out << "n,t,fraction_observable\n";
  const EdgeIndexMap map(n_nodes);
  const Matrix incidence = build_incidence(map);
  const Matrix identity_f =
      Matrix::Identity(map.max_edges(), map.max_edges());
  for (int horizon = t_lo; horizon <= t_hi; ++horizon) {
    int observable = 0;
    for (int trial = 0; trial < trials; ++trial) {
      Rng rng = Rng::substream(
          seed, static_cast<std::uint64_t>(horizon) * 1000003ULL + trial);
      ObservabilityProblem problem;
      for (int i = 0; i < horizon; ++i) {
        Vector q(n_nodes);
        for (int j = 0; j < n_nodes; ++j) q[j] = rng.normal();
        problem.H_seq.push_back(linear_observation(0.0, 1.0, incidence, q).H);
        if (i > 0) problem.F_seq.push_back(identity_f);
      }
      if (is_t_step_observable(problem).observable) ++observable;
    }
    const double fraction =
        trials > 0 ? static_cast<double>(observable) / trials : 0.0;
    out << n_nodes << ',' << horizon << ',' << format_double(fraction) << "\n";
  }
}

// ---------------------------------------------------------------------------
// JSON config round trip
// ---------------------------------------------------------------------------

namespace {

json filter_to_json(const PolynomialGraphFilter& filter) {
  json j;
  j["coeffs"] = std::vector<double>(filter.coeffs.data(),
                                    filter.coeffs.data() + filter.coeffs.size());
  return j;
}

PolynomialGraphFilter filter_from_json(const json& j) {
  if (j.contains("name")) {
    return builtin_filter(j.at("name").get<std::string>(),
                          j.value("order", -1));
  }
  const auto coeffs = j.at("coeffs").get<std::vector<double>>();
  PolynomialGraphFilter f;
  f.coeffs = Eigen::Map<const Vector>(coeffs.data(), coeffs.size());
  return f;
}

json config_to_json_obj(const ExperimentConfig& cfg) {
  json scenario;
  scenario["n_nodes"] = cfg.scenario.n_nodes;
  scenario["t_max"] = cfg.scenario.t_max;
  scenario["init_edge_count"] = cfg.scenario.init_edge_count;
  scenario["change_interval"] = cfg.scenario.change_interval;
  scenario["changes_per_event"] = cfg.scenario.changes_per_event;
  scenario["sigma_e"] = cfg.scenario.sigma_e;
  scenario["sigma_v"] = cfg.scenario.sigma_v;
  scenario["filter"] = filter_to_json(cfg.scenario.filter);
  scenario["new_edge_mean"] = cfg.scenario.new_edge_mean;
  scenario["new_edge_var"] = cfg.scenario.new_edge_var;

  json trackers = json::array();
  for (const auto& spec : cfg.trackers) {
    json t;
    t["kind"] = tracker_name(spec.kind);
    if (spec.kind == TrackerKind::GspEkf) {
      t["ista"] = {{"iterations", spec.ista.iterations},
                   {"mu", spec.ista.mu},
                   {"step_sizes", spec.ista.step_sizes}};
    }
    trackers.push_back(t);
  }

  json j;
  j["id"] = cfg.id;
  j["scenario"] = scenario;
  j["trackers"] = trackers;
  j["assumed_q_sigma"] = cfg.resolved_q_sigma();
  j["init_estimate"] = cfg.init_estimate;
  j["init_covariance_scale"] = cfg.init_covariance_scale;
  j["mc_trials"] = cfg.mc_trials;
  j["eier_threshold"] = cfg.eier_threshold;
  j["output_dir"] = cfg.resolved_output_dir();
  j["seed"] = cfg.seed;
  return j;
}

ExperimentConfig config_from_json_obj(const json& j) {
  ExperimentConfig cfg;
  cfg.id = j.value("id", std::string("experiment"));
  const json& s = j.at("scenario");
  cfg.scenario.n_nodes = s.at("n_nodes").get<int>();
  cfg.scenario.t_max = s.at("t_max").get<int>();
  cfg.scenario.init_edge_count = s.at("init_edge_count").get<int>();
  cfg.scenario.change_interval = s.at("change_interval").get<int>();
  cfg.scenario.changes_per_event = s.value("changes_per_event", 1);
  cfg.scenario.sigma_e = s.at("sigma_e").get<double>();
  cfg.scenario.sigma_v = s.at("sigma_v").get<double>();
  cfg.scenario.filter = filter_from_json(s.at("filter"));
  cfg.scenario.new_edge_mean = s.value("new_edge_mean", 1.0);
  cfg.scenario.new_edge_var = s.value("new_edge_var", 0.01);

  for (const auto& t : j.at("trackers")) {
    TrackerSpec spec;
    spec.kind = tracker_from_name(t.at("kind").get<std::string>());
    if (t.contains("ista")) {
      const json& ista = t.at("ista");
      spec.ista.iterations = ista.value("iterations", 1);
      spec.ista.mu = ista.value("mu", 0.25);
      spec.ista.step_sizes =
          ista.value("step_sizes", std::vector<double>{1.0});
    }
    cfg.trackers.push_back(spec);
  }

  cfg.assumed_q_sigma = j.value("assumed_q_sigma", -1.0);
  cfg.init_estimate = j.value("init_estimate", std::string("ones"));
  cfg.init_covariance_scale = j.value("init_covariance_scale", 0.25);
  cfg.mc_trials = j.value("mc_trials", 100);
  cfg.eier_threshold = j.value("eier_threshold", 0.1);
  cfg.output_dir = j.value("output_dir", std::string());
  cfg.seed = j.value("seed", std::uint64_t{1});
  validate(cfg);
  return cfg;
}

}  // namespace

std::string experiment_to_json(const ExperimentConfig& config) {
  return config_to_json_obj(config).dump(2);
}

ExperimentConfig experiment_from_json_text(const std::string& text) {
  return config_from_json_obj(json::parse(text));
}

std::vector<ExperimentConfig> experiments_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  json j = json::parse(in);
  std::vector<ExperimentConfig> out;
  if (j.contains("experiments")) {
    for (const auto& e : j.at("experiments")) {
      out.push_back(config_from_json_obj(e));
    }
  } else {
    out.push_back(config_from_json_obj(j));
  }
  return out;
}

}  // namespace graphtrack
