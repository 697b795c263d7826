#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "graphtrack/experiment.hpp"

namespace {

using namespace graphtrack;

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    out.push_back(std::stoi(text.substr(pos, next - pos)));
    pos = next + 1;
  }
  if (out.empty()) throw CLI::ValidationError("empty integer list");
  return out;
}

// "5", "1..6" or "1-6"
std::pair<int, int> parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots != std::string::npos) {
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  }
  auto dash = text.find('-', 1);
  if (dash != std::string::npos) {
    return {std::stoi(text.substr(0, dash)), std::stoi(text.substr(dash + 1))};
  }
  const int v = std::stoi(text);
  return {v, v};
}

int run_experiments(std::vector<ExperimentConfig> configs,
                    const std::string& out_base, std::uint64_t seed,
                    bool seed_set, int trials, int parallel) {
  for (auto& cfg : configs) {
    if (seed_set) cfg.seed = seed;
    if (trials > 0) cfg.mc_trials = trials;
    std::string dir = cfg.resolved_output_dir();
    if (!out_base.empty()) {
      // Replace the default "out" base, keeping the experiment id path.
      dir = out_base + "/" + cfg.id;
    }
    std::cerr << "running " << cfg.id << " (" << cfg.mc_trials
              << " trials) -> " << dir << "\n";
    const ExperimentResult result = run_experiment(cfg, parallel);
    write_experiment_csv(result, dir);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic graph-topology tracking experiments"};
  app.require_subcommand(1);

  // ---- run ----
  std::string config_path, preset_name, out_dir;
  std::uint64_t seed = 0;
  int trials = -1, parallel = 1;
  auto* run = app.add_subcommand("run", "Run experiments from a config or preset");
  auto* config_opt = run->add_option("--config", config_path, "JSON config file");
  auto* preset_opt = run->add_option("--preset", preset_name, "Built-in preset name");
  run->add_option("--out", out_dir, "Output base directory (default out/)");
  auto* seed_opt = run->add_option("--seed", seed, "Override master seed");
  run->add_option("--trials", trials, "Override Monte-Carlo trial count");
  run->add_option("--parallel", parallel, "Worker threads for trials")
      ->check(CLI::PositiveNumber);

  // ---- bench-jacobian ----
  std::string n_list = "20", p_list = "1,2,4,8,16", bench_out;
  int repeats = 5;
  std::uint64_t bench_seed = 1;
  auto* bench = app.add_subcommand("bench-jacobian",
                                   "Time DP vs naive Jacobian computation");
  bench->add_option("--n", n_list, "Comma-separated node counts");
  bench->add_option("--p", p_list, "Comma-separated filter orders");
  bench->add_option("--repeats", repeats, "Timing repetitions per point");
  bench->add_option("--seed", bench_seed, "Instance seed");
  bench->add_option("--out", bench_out, "CSV path (default stdout)");

  // ---- observability ----
  int obs_n = 10, obs_trials = 100;
  std::string t_range = "1..6";
  std::uint64_t obs_seed = 1;
  std::string obs_out;
  auto* obs = app.add_subcommand("observability",
                                 "Monte-Carlo rank study of the observability matrix");
  obs->add_option("--n", obs_n, "Node count")->check(CLI::Range(2, 1000));
  obs->add_option("--t", t_range, "Horizon range, e.g. 1..6");
  obs->add_option("--trials", obs_trials, "Trials per horizon");
  obs->add_option("--seed", obs_seed, "Seed");
  obs->add_option("--out", obs_out, "CSV path (default stdout)");

  // ---- presets ----
  auto* presets_cmd = app.add_subcommand("presets", "List built-in presets");

  // ---- dump-presets ----
  std::string dump_dir = "presets";
  auto* dump = app.add_subcommand("dump-presets",
                                  "Write built-in presets as JSON files");
  dump->add_option("--dir", dump_dir, "Target directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      std::vector<ExperimentConfig> configs;
      if (config_opt->count() && preset_opt->count()) {
        std::cerr << "error: pass either --config or --preset, not both\n";
        return 2;
      }
      if (config_opt->count()) {
        configs = experiments_from_json_file(config_path);
      } else if (preset_opt->count()) {
        const Preset* preset = find_preset(preset_name);
        if (!preset) {
          std::cerr << "error: unknown preset '" << preset_name
                    << "' (see `track presets`)\n";
          return 2;
        }
        configs = preset->experiments;
      } else {
        std::cerr << "error: --config or --preset required\n";
        return 2;
      }
      return run_experiments(std::move(configs), out_dir, seed,
                             seed_opt->count() > 0, trials, parallel);
    }

    if (bench->parsed()) {
      if (bench_out.empty()) {
        run_jacobian_bench(parse_int_list(n_list), parse_int_list(p_list),
                           repeats, bench_seed, std::cout);
      } else {
        std::ofstream out(bench_out);
        if (!out) {
          std::cerr << "error: cannot write " << bench_out << "\n";
          return 1;
        }
        run_jacobian_bench(parse_int_list(n_list), parse_int_list(p_list),
                           repeats, bench_seed, out);
      }
      return 0;
    }

    if (obs->parsed()) {
      const auto [t_lo, t_hi] = parse_range(t_range);
      if (obs_out.empty()) {
        run_observability_study(obs_n, t_lo, t_hi, obs_trials, obs_seed,
                                std::cout);
      } else {
        std::ofstream out(obs_out);
        if (!out) {
          std::cerr << "error: cannot write " << obs_out << "\n";
          return 1;
        }
        run_observability_study(obs_n, t_lo, t_hi, obs_trials, obs_seed, out);
      }
      return 0;
    }

    if (presets_cmd->parsed()) {
      for (const auto& preset : builtin_presets()) {
        std::cout << preset.name << " (" << preset.experiments.size()
                  << (preset.experiments.size() == 1 ? " experiment" : " experiments")
                  << ")\n    " << preset.description << "\n";
      }
      return 0;
    }

    if (dump->parsed()) {
      std::filesystem::create_directories(dump_dir);
      for (const auto& preset : builtin_presets()) {
        const std::string path = dump_dir + "/" + preset.name + ".json";
        std::ofstream out(path);
        if (!out) {
          std::cerr << "error: cannot write " << path << "\n";
          return 1;
        }
        if (preset.experiments.size() == 1) {
          out << experiment_to_json(preset.experiments[0]) << "\n";
        } else {
          out << "{\n  \"experiments\": [\n";
          for (std::size_t i = 0; i < preset.experiments.size(); ++i) {
            std::string body = experiment_to_json(preset.experiments[i]);
            // indent the object two levels
            std::string indented = "    ";
            for (char c : body) {
              indented += c;
              if (c == '\n') indented += "    ";
            }
            out << indented << (i + 1 < preset.experiments.size() ? "," : "")
                << "\n";
          }
          out << "  ]\n}\n";
        }
        std::cout << "wrote " << path << "\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
