/*
 * Copyright 2026 the imclust authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Benchmark CLI around the imclust library. Subcommands: generate, run,
// sweep, scatter, oracle. Exit codes: 0 success, 2 usage error, 3 runtime or
// degenerate-input error.

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "imclust/assign.hpp"
#include "imclust/baseline.hpp"
#include "imclust/experiment.hpp"
#include "imclust/metric.hpp"
#include "imclust/oracle.hpp"
#include "imclust/partition.hpp"
#include "imclust/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct CommonFlags {
  std::string config_path;
  std::optional<int> b, u, m, size_cap, kmeans_restarts;
  std::optional<double> side_length, alpha, dist_min, dist_max;
  std::optional<std::string> seeds, algorithms, convention, m_range, output;
  std::optional<bool> floor, prune;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("-c,--config", f.config_path, "flat key-value config file");
  cmd->add_option("-b,--bs", f.b, "number of base stations");
  cmd->add_option("-u,--users", f.u, "number of users");
  cmd->add_option("-M,--clusters", f.m, "cluster count");
  cmd->add_option("--m-range", f.m_range, "sweep grid, lo..hi");
  cmd->add_option("--seeds", f.seeds, "comma list or lo..hi");
  cmd->add_option("--algorithms", f.algorithms,
                  "comma list: similarity,matching,stable,spectral,oracle");
  cmd->add_option("--convention", f.convention, "strict or switch_off");
  cmd->add_option("--side-length", f.side_length, "square side in meters");
  cmd->add_option("--alpha", f.alpha, "path-loss exponent");
  cmd->add_option("--dist-min", f.dist_min, "clamp distance");
  cmd->add_option("--dist-max", f.dist_max, "cutoff distance");
  cmd->add_option("--size-cap", f.size_cap, "max cluster size for DPH");
  cmd->add_option("--kmeans-restarts", f.kmeans_restarts, "spectral k-means restarts");
  cmd->add_flag("--floor,!--no-floor", f.floor, "stable preference floor");
  cmd->add_flag("--prune,!--no-prune", f.prune, "greedy BS pruning post-pass");
  cmd->add_option("-o,--output", f.output, "output path (default stdout)");
}

imclust::ExperimentConfig make_config(const CommonFlags& f) {
  imclust::ExperimentConfig cfg;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw std::invalid_argument("cannot open config file: " + f.config_path);
    cfg = imclust::parse_config(in);
  }
  using imclust::apply_config_entry;
  auto set = [&cfg](std::string_view key, const std::string& value) {
    apply_config_entry(cfg, key, value);
  };
  if (f.b) set("b", std::to_string(*f.b));
  if (f.u) set("u", std::to_string(*f.u));
  if (f.m) set("M", std::to_string(*f.m));
  if (f.m_range) set("M_range", *f.m_range);
  if (f.seeds) set("seeds", *f.seeds);
  if (f.algorithms) set("algorithms", *f.algorithms);
  if (f.convention) set("convention", *f.convention);
  if (f.side_length) cfg.side_length = *f.side_length;
  if (f.alpha) cfg.alpha = *f.alpha;
  if (f.dist_min) cfg.dist_min = *f.dist_min;
  if (f.dist_max) cfg.dist_max = *f.dist_max;
  if (f.size_cap) cfg.size_cap = *f.size_cap;
  if (f.kmeans_restarts) cfg.kmeans_restarts = *f.kmeans_restarts;
  if (f.floor) cfg.floor = *f.floor;
  if (f.prune) cfg.prune = *f.prune;
  if (f.output) cfg.output_path = *f.output;
  return cfg;
}

// Streams to the config's output path, or stdout when none.
int with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) {
    fn(std::cout);
    return kExitOk;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  fn(out);
  return kExitOk;
}

imclust::Scenario scenario_for(const imclust::ExperimentConfig& cfg, std::uint64_t seed) {
  imclust::Scenario s =
      imclust::generate_scenario(cfg.b, cfg.u, cfg.side_length, seed);
  s.alpha = cfg.alpha;
  s.dist_min = cfg.dist_min;
  s.dist_max = cfg.dist_max;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"interference-minimization clustering benchmark"};
  app.require_subcommand(1);

  CommonFlags generate_flags, run_flags, sweep_flags, scatter_flags, oracle_flags;
  bool no_timestamp = false;
  bool no_means = false;

  auto* generate = app.add_subcommand("generate", "write a random scenario file");
  add_common_flags(generate, generate_flags);

  auto* run = app.add_subcommand("run", "run algorithms over seeds at one M");
  add_common_flags(run, run_flags);
  run->add_flag("--no-timestamp", no_timestamp, "omit the timestamp header line");
  run->add_flag("--no-means", no_means, "omit per-algorithm mean rows");

  auto* sweep = app.add_subcommand("sweep", "mean objective vs M per algorithm");
  add_common_flags(sweep, sweep_flags);
  sweep->add_flag("--no-timestamp", no_timestamp, "omit the timestamp header line");

  auto* scatter = app.add_subcommand("scatter", "dump clustered positions");
  add_common_flags(scatter, scatter_flags);

  auto* oracle = app.add_subcommand("oracle", "exact minimum on a tiny instance");
  add_common_flags(oracle, oracle_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (generate->parsed()) {
      imclust::ExperimentConfig cfg = make_config(generate_flags);
      std::uint64_t seed = cfg.seeds.empty() ? 0 : cfg.seeds.front();
      imclust::Scenario s = scenario_for(cfg, seed);
      return with_output(cfg.output_path,
                         [&s](std::ostream& out) { imclust::write_scenario(out, s); });
    }

    if (run->parsed()) {
      imclust::ExperimentConfig cfg = make_config(run_flags);
      auto results = imclust::run_experiment(cfg);
      return with_output(cfg.output_path, [&](std::ostream& out) {
        imclust::write_results_csv(out, results, !no_means, !no_timestamp);
      });
    }

    if (sweep->parsed()) {
      imclust::ExperimentConfig cfg = make_config(sweep_flags);
      auto rows = imclust::sweep_m(cfg);
      return with_output(cfg.output_path, [&](std::ostream& out) {
        imclust::write_sweep_csv(out, rows, !no_timestamp);
      });
    }

    if (scatter->parsed()) {
      imclust::ExperimentConfig cfg = make_config(scatter_flags);
      if (!cfg.m) throw std::invalid_argument("scatter needs M");
      if (cfg.seeds.empty()) throw std::invalid_argument("scatter needs one seed");
      std::uint64_t seed = cfg.seeds.front();
      imclust::Scenario s = scenario_for(cfg, seed);
      imclust::WeightMatrix w = imclust::build_weight_matrix(s);
      for (imclust::Algorithm a : cfg.algorithms) {
        auto cell = imclust::run_algorithm_cell(w, a, *cfg.m, cfg, seed);
        std::string path = cfg.output_path;
        if (!path.empty() && cfg.algorithms.size() > 1) {
          auto dot = path.rfind('.');
          std::string stem = dot == std::string::npos ? path : path.substr(0, dot);
          std::string ext = dot == std::string::npos ? ".csv" : path.substr(dot);
          path = stem + "_" + std::string(imclust::to_string(a)) + ext;
        }
        if (path.empty()) std::cout << "# algorithm " << imclust::to_string(a) << "\n";
        with_output(path, [&](std::ostream& out) {
          imclust::write_scatter_csv(out, s, cell.partition);
        });
      }
      return kExitOk;
    }

    if (oracle->parsed()) {
      imclust::ExperimentConfig cfg = make_config(oracle_flags);
      if (!cfg.m) throw std::invalid_argument("oracle needs M");
      std::uint64_t seed = cfg.seeds.empty() ? 0 : cfg.seeds.front();
      imclust::Scenario s = scenario_for(cfg, seed);
      imclust::WeightMatrix w = imclust::build_weight_matrix(s);
      auto result = imclust::exact_minimum(w, *cfg.m, cfg.convention);
      return with_output(cfg.output_path, [&](std::ostream& out) {
        out << "# minimum " << (result.feasible ? "feasible" : "infeasible")
            << " value " << result.value << "\n";
        imclust::write_partition_csv(out, result.argmin);
      });
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
