#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "graphtrack/simulation.hpp"
#include "graphtrack/trackers.hpp"

namespace graphtrack {

enum class TrackerKind { Ekf, GspEkf, Oracle, LinearKf };

std::string tracker_name(TrackerKind kind);
TrackerKind tracker_from_name(const std::string& name);

struct TrackerSpec {
  TrackerKind kind = TrackerKind::Ekf;
  IstaConfig ista;  // used by GSP-EKF only
};

/// One experiment: a scenario, a set of trackers, and run bookkeeping.
/// Trackers are handed the mismatched process covariance
/// Q = assumed_q_sigma^2 * I (the generator uses noise on active edges
/// only) and the true R = sigma_v^2 * I.
struct ExperimentConfig {
  std::string id = "experiment";
  ScenarioConfig scenario;
  std::vector<TrackerSpec> trackers;
  double assumed_q_sigma = -1.0;  // < 0: use scenario.sigma_e
  std::string init_estimate = "ones";  // "ones" | "zeros"
  double init_covariance_scale = 0.25;
  int mc_trials = 100;
  double eier_threshold = 0.1;
  std::string output_dir;  // empty: "out/<id>"
  std::uint64_t seed = 1;

  double resolved_q_sigma() const {
    return assumed_q_sigma < 0.0 ? scenario.sigma_e : assumed_q_sigma;
  }
  std::string resolved_output_dir() const {
    return output_dir.empty() ? "out/" + id : output_dir;
  }
};

struct StepRecord {
  int trial;
  int t;
  TrackerKind tracker;
  double nmse;
  double eier;
  bool ok;
};

struct AggregateRecord {
  int t;
  TrackerKind tracker;
  double nmse_mean;
  double eier_mean;
  int trials_ok;
};

struct TimingRecord {
  int trial;
  int t;
  TrackerKind tracker;
  double seconds;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<StepRecord> rows;            // trial-major, tracker, then t
  std::vector<AggregateRecord> aggregate;  // t-major, tracker in config order
  std::vector<TimingRecord> timing;

  /// Mean nmse per t for one tracker (ok rows), indexed t-1.
  std::vector<double> nmse_series(TrackerKind kind) const;
  std::vector<double> eier_series(TrackerKind kind) const;
};

/// Runs mc_trials independent trials (substream seed per trial), each
/// tracker advanced step-by-step over the same trajectory. Trials may run
/// on up to `parallel` threads; output is identical for any thread count.
/// A NumericalError inside a tracker step is recorded as a failed row and
/// stops that tracker for the trial; other trackers continue.
ExperimentResult run_experiment(const ExperimentConfig& config, int parallel = 1);

/// Writes raw.csv, aggregate.csv, timing.csv and config.json under dir
/// (created if needed). Metric CSVs are byte-deterministic for a fixed
/// config and seed; wall-clock timings live in timing.csv only.
void write_experiment_csv(const ExperimentResult& result, const std::string& dir);

/// Times jacobian_dp vs jacobian_naive on random instances.
/// CSV columns: n,p,method,median_seconds. repeats <= 0 emits only the header.
void run_jacobian_bench(const std::vector<int>& n_list,
                        const std::vector<int>& p_list, int repeats,
                        std::uint64_t seed, std::ostream& out);

/// Fraction of random trials whose T-step observability matrix (Claim-1
/// observation matrices from Gaussian inputs, identity transitions) has
/// full column rank, for each T in [t_lo, t_hi].
/// CSV columns: n,t,fraction_observable.
void run_observability_study(int n_nodes, int t_lo, int t_hi, int trials,
                             std::uint64_t seed, std::ostream& out);

/// JSON round trip for configs. A file may hold a single experiment object
/// or {"experiments": [...]}.
std::string experiment_to_json(const ExperimentConfig& config);
ExperimentConfig experiment_from_json_text(const std::string& text);
std::vector<ExperimentConfig> experiments_from_json_file(const std::string& path);

struct Preset {
  std::string name;
  std::string description;
  std::vector<ExperimentConfig> experiments;
};

const std::vector<Preset>& builtin_presets();
const Preset* find_preset(const std::string& name);

}  // namespace graphtrack
