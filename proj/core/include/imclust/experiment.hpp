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
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "imclust/matrix.hpp"
#include "imclust/metric.hpp"
#include "imclust/partition.hpp"
#include "imclust/scenario.hpp"

namespace imclust {

enum class Algorithm { similarity, matching, stable, spectral, oracle };

std::string_view to_string(Algorithm a);
Algorithm algorithm_from_string(std::string_view s);

// Flat key-value configuration; defaults mirror the simulation protocol
// (1000 m square, alpha 4, dist_min 1, dist_max 200, seeds 1..9).
struct ExperimentConfig {
  int b = 50;
  int u = 100;
  double side_length = 1000.0;
  double alpha = 4.0;
  double dist_min = 1.0;
  double dist_max = 200.0;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::optional<int> m;            // run/scatter cluster count
  int m_range_lo = 2;              // sweep grid
  int m_range_hi = 40;
  std::vector<Algorithm> algorithms = {Algorithm::similarity};
  Convention convention = Convention::strict;
  std::optional<int> size_cap;
  bool floor = false;
  bool prune = false;
  int kmeans_restarts = 10;
  std::string output_path;  // empty: stdout
};

// Accepted keys: b, u, side_length, alpha, dist_min, dist_max, seeds,
// M, M_range, algorithms, convention, size_cap, floor, prune,
// kmeans_restarts, output_path. Lines are "key value" or "key = value";
// '#' starts a comment. seeds/algorithms take comma lists; seeds and
// M_range also accept "lo..hi".
ExperimentConfig parse_config(std::istream& in);
void apply_config_entry(ExperimentConfig& cfg, std::string_view key,
                        std::string_view value);

// One algorithm run on one scenario's weight matrix.
struct CellOutput {
  Partition partition;
  std::vector<int> off_bs;  // discarded/pruned BSs, rows zeroed for scoring
  InterferenceReport report;
  int m_effective = 0;
};

// The spectral baseline is always scored under switch_off (it may emit
// BS-only clusters); everything else under cfg.convention. Unassigned BSs
// count as switched off: their rows are zeroed before scoring.
CellOutput run_algorithm_cell(const WeightMatrix& w, Algorithm algorithm, int m,
                              const ExperimentConfig& cfg, std::uint64_t seed);

struct CellResult {
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::similarity;
  int m_requested = 0;
  int m_effective = 0;
  Convention convention = Convention::strict;
  double interference_total = 0.0;
  int infinite_terms = 0;
  double runtime_ms = 0.0;
};

// Every (algorithm, seed) cell at cfg.m. Cells execute concurrently; the
// returned order is the config order (algorithms outer, seeds inner).
std::vector<CellResult> run_experiment(const ExperimentConfig& cfg);

// CSV schema: seed,algorithm,M_requested,M_effective,convention,
// interference_total,infinite_terms_count,runtime_ms. One mean row per
// algorithm at the end (seed column "mean") when include_means.
// runtime_ms is wall time and is excluded from any determinism guarantee.
void write_results_csv(std::ostream& out, const std::vector<CellResult>& results,
                       bool include_means, bool timestamp_header);

struct SweepRow {
  Algorithm algorithm = Algorithm::similarity;
  int m_requested = 0;
  Convention convention = Convention::strict;
  int seeds = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double mean_m_effective = 0.0;
  int infinite_cells = 0;
  double mean_runtime_ms = 0.0;
};

// One row per (algorithm, M) over cfg.m_range_lo..hi, aggregated over seeds.
std::vector<SweepRow> sweep_m(const ExperimentConfig& cfg);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                     bool timestamp_header);

// Scatter schema: kind,id,x,y,cluster_id (cluster_id -1 when unassigned).
void write_scatter_csv(std::ostream& out, const Scenario& s, const Partition& p);

}  // namespace imclust
