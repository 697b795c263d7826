#include <cmath>

#include "graphtrack/experiment.hpp"

namespace graphtrack {

namespace {

TrackerSpec ekf() { return {TrackerKind::Ekf, {}}; }
TrackerSpec oracle() { return {TrackerKind::Oracle, {}}; }
TrackerSpec linear_kf() { return {TrackerKind::LinearKf, {}}; }

TrackerSpec gsp(double mu) {
  TrackerSpec spec;
  spec.kind = TrackerKind::GspEkf;
  spec.ista.iterations = 1;
  spec.ista.mu = mu;
  spec.ista.step_sizes = {1.0};
  return spec;
}

// N=20 linear setup: 3N initial edges, one toggle every 2N steps.
ExperimentConfig lin20_base() {
  ExperimentConfig cfg;
  cfg.id = "lin20";
  cfg.scenario.n_nodes = 20;
  cfg.scenario.t_max = 159;
  cfg.scenario.init_edge_count = 60;
  cfg.scenario.change_interval = 40;
  cfg.scenario.changes_per_event = 1;
  cfg.scenario.sigma_e = 0.01;
  cfg.scenario.sigma_v = 0.01;
  cfg.scenario.filter = builtin_filter("Lin");
  cfg.trackers = {ekf(), gsp(0.25), oracle(), linear_kf()};
  cfg.mc_trials = 100;
  cfg.seed = 1101;
  return cfg;
}

// N=10 fifth-order setup with stronger noise.
ExperimentConfig nl5_base() {
  ExperimentConfig cfg;
  cfg.id = "nl5";
  cfg.scenario.n_nodes = 10;
  cfg.scenario.t_max = 159;
  cfg.scenario.init_edge_count = 15;
  cfg.scenario.change_interval = 20;
  cfg.scenario.changes_per_event = 1;
  cfg.scenario.sigma_e = 0.1;
  cfg.scenario.sigma_v = std::sqrt(0.2);
  cfg.scenario.filter = builtin_filter("NL5");
  cfg.trackers = {ekf(), gsp(0.25), oracle()};
  cfg.mc_trials = 100;
  cfg.seed = 1103;
  return cfg;
}

std::vector<Preset> make_presets() {
  std::vector<Preset> presets;

  presets.push_back(
      {"lin20", "Linear model, N=20, tracks MSE/EIER over 159 steps",
       {lin20_base()}});

  {
    ExperimentConfig cfg = lin20_base();
    cfg.id = "nl4-20";
    cfg.scenario.filter = builtin_filter("NL4");
    cfg.trackers = {ekf(), gsp(0.25), oracle()};
    cfg.seed = 1102;
    presets.push_back(
        {"nl4-20", "Fourth-order model, N=20, same scenario as lin20",
         {cfg}});
  }

  presets.push_back(
      {"nl5", "Fifth-order model, N=10, 15 initial edges, strong noise",
       {nl5_base()}});

  {
    Preset sweep{"nlp-sweep",
                 "NLP filter order P = 1..N-1 (mu 0.25 below P=7, else 0.15)",
                 {}};
    for (int p = 1; p <= 9; ++p) {
      ExperimentConfig cfg = nl5_base();
      cfg.id = "nlp-sweep/p-" + std::to_string(p);
      cfg.scenario.t_max = 79;
      cfg.scenario.sigma_v = std::sqrt(2.0);
      cfg.scenario.filter = builtin_filter("NLP", p);
      cfg.trackers = {ekf(), gsp(p < 7 ? 0.25 : 0.15), oracle()};
      cfg.seed = 1104;
      sweep.experiments.push_back(cfg);
    }
    presets.push_back(sweep);
  }

  {
    Preset sweep{"noise-sweep",
                 "NL5 with sigma_e = sigma_v over a log-spaced grid",
                 {}};
    for (double sigma : {0.01, 0.0316227766016838, 0.1, 0.316227766016838, 1.0}) {
      ExperimentConfig cfg = nl5_base();
      cfg.id = "noise-sweep/sigma-" + std::to_string(sigma).substr(0, 6);
      cfg.scenario.t_max = 79;
      cfg.scenario.sigma_e = sigma;
      cfg.scenario.sigma_v = sigma;
      cfg.seed = 1105;
      sweep.experiments.push_back(cfg);
    }
    presets.push_back(sweep);
  }

  {
    Preset sweep{"sparsity-sweep",
                 "NL5 with varying initial edge count (sigma_v = sqrt(2))",
                 {}};
    for (int edges : {5, 10, 15, 20, 25, 30}) {
      ExperimentConfig cfg = nl5_base();
      cfg.id = "sparsity-sweep/edges-" + std::to_string(edges);
      cfg.scenario.t_max = 79;
      cfg.scenario.sigma_v = std::sqrt(2.0);
      cfg.scenario.init_edge_count = edges;
      cfg.seed = 1106;
      sweep.experiments.push_back(cfg);
    }
    presets.push_back(sweep);
  }

  {
    Preset sweep{"change-rate-sweep",
                 "NL5, edges toggled per event varies; interval fixed at 3N; "
                 "mu follows the changed-connection percentage",
                 {}};
    for (int changes : {1, 2, 4, 7, 10}) {
      ExperimentConfig cfg = nl5_base();
      cfg.id = "change-rate-sweep/changes-" + std::to_string(changes);
      cfg.scenario.sigma_v = std::sqrt(2.0);
      cfg.scenario.change_interval = 30;
      cfg.scenario.changes_per_event = changes;
      // percent of the N(N-1)/2 = 45 candidate edges toggled per event
      const double percent = 100.0 * changes / 45.0;
      const double mu = percent < 7.5 ? 0.25 : (percent <= 15.0 ? 0.15 : 0.1);
      cfg.trackers = {ekf(), gsp(mu), oracle()};
      cfg.seed = 1107;
      sweep.experiments.push_back(cfg);
    }
    presets.push_back(sweep);
  }

  {
    Preset sweep{"interval-sweep",
                 "NL5, steps between support events varies (mu 0.1 below 8, "
                 "else 0.25)",
                 {}};
    for (int interval : {2, 3, 4, 5, 7, 10, 15, 20, 30}) {
      ExperimentConfig cfg = nl5_base();
      cfg.id = "interval-sweep/interval-" + std::to_string(interval);
      cfg.scenario.sigma_v = std::sqrt(2.0);
      cfg.scenario.change_interval = interval;
      cfg.trackers = {ekf(), gsp(interval < 8 ? 0.1 : 0.25), oracle()};
      cfg.seed = 1108;
      sweep.experiments.push_back(cfg);
    }
    presets.push_back(sweep);
  }

  return presets;
}

}  // namespace

const std::vector<Preset>& builtin_presets() {
  static const std::vector<Preset> presets = make_presets();
  return presets;
}

const Preset* find_preset(const std::string& name) {
  for (const auto& preset : builtin_presets()) {
    if (preset.name == name) return &preset;
  }
  return nullptr;
}

}  // namespace graphtrack
