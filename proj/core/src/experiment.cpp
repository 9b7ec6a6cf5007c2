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
#include "imclust/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <exception>
#include <istream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "imclust/assign.hpp"
#include "imclust/baseline.hpp"
#include "imclust/dph.hpp"
#include "imclust/oracle.hpp"
#include "imclust/stable.hpp"
#include "text_io.hpp"

namespace imclust {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::similarity: return "similarity";
    case Algorithm::matching: return "matching";
    case Algorithm::stable: return "stable";
    case Algorithm::spectral: return "spectral";
    case Algorithm::oracle: return "oracle";
  }
  return "unknown";
}

Algorithm algorithm_from_string(std::string_view s) {
  if (s == "similarity") return Algorithm::similarity;
  if (s == "matching") return Algorithm::matching;
  if (s == "stable") return Algorithm::stable;
  if (s == "spectral") return Algorithm::spectral;
  if (s == "oracle") return Algorithm::oracle;
  throw std::invalid_argument("unknown algorithm: " + std::string(s));
}

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  while (true) {
    auto pos = s.find(sep);
    parts.push_back(detail::trim(s.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return parts;
}

bool parse_flag(std::string_view v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw std::invalid_argument("bad flag value: " + std::string(v));
}

// "lo..hi" inclusive range.
std::pair<long long, long long> parse_range(std::string_view v) {
  auto pos = v.find("..");
  if (pos == std::string_view::npos)
    throw std::invalid_argument("expected lo..hi range: " + std::string(v));
  long long lo = detail::parse_int<long long>(detail::trim(v.substr(0, pos)));
  long long hi = detail::parse_int<long long>(detail::trim(v.substr(pos + 2)));
  if (lo > hi) throw std::invalid_argument("empty range: " + std::string(v));
  return {lo, hi};
}

}  // namespace

void apply_config_entry(ExperimentConfig& cfg, std::string_view key,
                        std::string_view value) {
  if (key == "b") {
    cfg.b = detail::parse_int<int>(value);
  } else if (key == "u") {
    cfg.u = detail::parse_int<int>(value);
  } else if (key == "side_length") {
    cfg.side_length = detail::parse_double(value);
  } else if (key == "alpha") {
    cfg.alpha = detail::parse_double(value);
  } else if (key == "dist_min") {
    cfg.dist_min = detail::parse_double(value);
  } else if (key == "dist_max") {
    cfg.dist_max = detail::parse_double(value);
  } else if (key == "seeds") {
    cfg.seeds.clear();
    if (value.find("..") != std::string_view::npos) {
      auto [lo, hi] = parse_range(value);
      if (lo < 0) throw std::invalid_argument("seeds must be non-negative");
      for (long long s = lo; s <= hi; ++s) cfg.seeds.push_back(static_cast<std::uint64_t>(s));
    } else if (!detail::trim(value).empty()) {
      for (auto part : split(value, ','))
        if (!part.empty()) cfg.seeds.push_back(detail::parse_int<std::uint64_t>(part));
    }
  } else if (key == "M") {
    cfg.m = detail::parse_int<int>(value);
  } else if (key == "M_range") {
    auto [lo, hi] = parse_range(value);
    cfg.m_range_lo = static_cast<int>(lo);
    cfg.m_range_hi = static_cast<int>(hi);
  } else if (key == "algorithms") {
    cfg.algorithms.clear();
    for (auto part : split(value, ','))
      if (!part.empty()) cfg.algorithms.push_back(algorithm_from_string(part));
  } else if (key == "convention") {
    cfg.convention = convention_from_string(value);
  } else if (key == "size_cap") {
    cfg.size_cap = detail::parse_int<int>(value);
  } else if (key == "floor") {
    cfg.floor = parse_flag(value);
  } else if (key == "prune") {
    cfg.prune = parse_flag(value);
  } else if (key == "kmeans_restarts") {
    cfg.kmeans_restarts = detail::parse_int<int>(value);
  } else if (key == "output_path") {
    cfg.output_path = std::string(value);
  } else {
    throw std::invalid_argument("unknown config key: " + std::string(key));
  }
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view sv = detail::trim(line);
    if (auto hash = sv.find('#'); hash != std::string_view::npos)
      sv = detail::trim(sv.substr(0, hash));
    if (sv.empty()) continue;
    auto space = sv.find_first_of(" \t=");
    if (space == std::string_view::npos)
      throw std::invalid_argument("malformed config line: " + line);
    std::string_view key = sv.substr(0, space);
    std::string_view value = sv.substr(space);
    while (!value.empty() && (value.front() == ' ' || value.front() == '\t' || value.front() == '='))
      value.remove_prefix(1);
    apply_config_entry(cfg, key, detail::trim(value));
  }
  return cfg;
}

namespace {

void check_m_for_algorithm(Algorithm a, int m, int b, int u) {
  switch (a) {
    case Algorithm::similarity:
    case Algorithm::matching:
    case Algorithm::stable:
      if (m < 1 || m > std::min(b, u))
        throw std::invalid_argument("cluster count must be in [1, min(b,u)] for " +
                                    std::string(to_string(a)));
      break;
    case Algorithm::spectral:
    case Algorithm::oracle:
      if (m < 1 || m > b + u)
        throw std::invalid_argument("cluster count must be in [1, b+u] for " +
                                    std::string(to_string(a)));
      break;
  }
}

}  // namespace

CellOutput run_algorithm_cell(const WeightMatrix& w, Algorithm algorithm, int m,
                              const ExperimentConfig& cfg, std::uint64_t seed) {
  const int b = static_cast<int>(w.rows());
  const int u = static_cast<int>(w.cols());
  check_m_for_algorithm(algorithm, m, b, u);

  CellOutput out;
  switch (algorithm) {
    case Algorithm::similarity: {
      DphResult dph = dph_clustering(w, m, cfg.size_cap);
      out.partition = assign_users_best(w, dph.clusters).partition;
      break;
    }
    case Algorithm::matching:
      out.partition = dph_matching_best(w, m, cfg.size_cap).partition;
      break;
    case Algorithm::stable: {
      StableOptions opts;
      opts.preference_floor = cfg.floor;
      opts.size_cap = cfg.size_cap;
      out.partition = stable_clustering(w, m, opts).partition;
      break;
    }
    case Algorithm::spectral: {
      SpectralConfig sc;
      sc.num_clusters = m;
      sc.kmeans_restarts = cfg.kmeans_restarts;
      sc.seed = seed;
      out.partition = spectral_clustering(w, sc);
      break;
    }
    case Algorithm::oracle: {
      OracleResult r = exact_minimum(w, m, cfg.convention);
      out.partition = r.argmin;
      break;
    }
  }

  if (cfg.prune && algorithm != Algorithm::oracle)
    out.partition = prune_bs(w, out.partition).partition;
  out.off_bs = unassigned_bs(out.partition, b);

  Convention conv = algorithm == Algorithm::spectral ? Convention::switch_off : cfg.convention;
  const WeightMatrix scored = out.off_bs.empty() ? w : with_rows_zeroed(w, out.off_bs);
  out.report = interference(scored, out.partition, conv);
  out.m_effective = static_cast<int>(out.partition.clusters.size());
  return out;
}

namespace {

template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  unsigned workers = std::min<unsigned>(std::thread::hardware_concurrency(),
                                        static_cast<unsigned>(count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) break;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

CellResult run_one_cell(const ExperimentConfig& cfg, Algorithm a, int m,
                        std::uint64_t seed) {
  Scenario s = generate_scenario(cfg.b, cfg.u, cfg.side_length, seed);
  s.alpha = cfg.alpha;
  s.dist_min = cfg.dist_min;
  s.dist_max = cfg.dist_max;
  WeightMatrix w = build_weight_matrix(s);

  auto start = std::chrono::steady_clock::now();
  CellOutput out = run_algorithm_cell(w, a, m, cfg, seed);
  auto stop = std::chrono::steady_clock::now();

  CellResult r;
  r.seed = seed;
  r.algorithm = a;
  r.m_requested = m;
  r.m_effective = out.m_effective;
  r.convention = out.report.convention;
  r.interference_total = out.report.total;
  r.infinite_terms = out.report.infinite_terms;
  r.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return r;
}

}  // namespace

std::vector<CellResult> run_experiment(const ExperimentConfig& cfg) {
  if (!cfg.m) throw std::invalid_argument("config is missing M");
  const int m = *cfg.m;
  for (Algorithm a : cfg.algorithms) check_m_for_algorithm(a, m, cfg.b, cfg.u);

  struct Cell {
    Algorithm algorithm;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (Algorithm a : cfg.algorithms)
    for (std::uint64_t seed : cfg.seeds) cells.push_back({a, seed});

  std::vector<CellResult> results(cells.size());
  parallel_for(cells.size(), [&](std::size_t i) {
    results[i] = run_one_cell(cfg, cells[i].algorithm, m, cells[i].seed);
  });
  return results;
}

namespace {

void write_timestamp(std::ostream& out) {
  std::time_t now = std::time(nullptr);
  char buf[64];
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  out << "# generated " << buf << "\n";
}

}  // namespace

void write_results_csv(std::ostream& out, const std::vector<CellResult>& results,
                       bool include_means, bool timestamp_header) {
  using detail::format_double;
  if (timestamp_header) write_timestamp(out);
  out << "seed,algorithm,M_requested,M_effective,convention,interference_total,"
         "infinite_terms_count,runtime_ms\n";
  for (const CellResult& r : results)
    out << r.seed << "," << to_string(r.algorithm) << "," << r.m_requested << ","
        << r.m_effective << "," << to_string(r.convention) << ","
        << format_double(r.interference_total) << "," << r.infinite_terms << ","
        << format_double(r.runtime_ms) << "\n";
  if (!include_means) return;

  // one mean row per (algorithm, M_requested, convention) block, input order
  std::vector<std::size_t> block_starts;
  for (std::size_t i = 0; i < results.size(); ++i) {
    bool fresh = true;
    for (std::size_t j = 0; j < i; ++j)
      if (results[j].algorithm == results[i].algorithm &&
          results[j].m_requested == results[i].m_requested &&
          results[j].convention == results[i].convention) {
        fresh = false;
        break;
      }
    if (fresh) block_starts.push_back(i);
  }
  for (std::size_t start : block_starts) {
    const CellResult& ref = results[start];
    double total = 0.0, m_eff = 0.0, runtime = 0.0;
    int inf_terms = 0, n = 0;
    for (const CellResult& r : results) {
      if (r.algorithm != ref.algorithm || r.m_requested != ref.m_requested ||
          r.convention != ref.convention)
        continue;
      total += r.interference_total;
      m_eff += r.m_effective;
      runtime += r.runtime_ms;
      inf_terms += r.infinite_terms;
      ++n;
    }
    out << "mean," << to_string(ref.algorithm) << "," << ref.m_requested << ","
        << format_double(m_eff / n) << "," << to_string(ref.convention) << ","
        << format_double(total / n) << "," << format_double(static_cast<double>(inf_terms) / n)
        << "," << format_double(runtime / n) << "\n";
  }
}

std::vector<SweepRow> sweep_m(const ExperimentConfig& cfg) {
  if (cfg.m_range_lo < 1 || cfg.m_range_lo > cfg.m_range_hi)
    throw std::invalid_argument("bad M_range");
  for (Algorithm a : cfg.algorithms) {
    check_m_for_algorithm(a, cfg.m_range_lo, cfg.b, cfg.u);
    check_m_for_algorithm(a, cfg.m_range_hi, cfg.b, cfg.u);
  }

  struct Cell {
    Algorithm algorithm;
    int m;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (Algorithm a : cfg.algorithms)
    for (int m = cfg.m_range_lo; m <= cfg.m_range_hi; ++m)
      for (std::uint64_t seed : cfg.seeds) cells.push_back({a, m, seed});

  std::vector<CellResult> results(cells.size());
  parallel_for(cells.size(), [&](std::size_t i) {
    results[i] = run_one_cell(cfg, cells[i].algorithm, cells[i].m, cells[i].seed);
  });

  std::vector<SweepRow> rows;
  std::size_t idx = 0;
  for (Algorithm a : cfg.algorithms)
    for (int m = cfg.m_range_lo; m <= cfg.m_range_hi; ++m) {
      SweepRow row;
      row.algorithm = a;
      row.m_requested = m;
      row.convention =
          a == Algorithm::spectral ? Convention::switch_off : cfg.convention;
      row.seeds = static_cast<int>(cfg.seeds.size());
      row.min = std::numeric_limits<double>::infinity();
      row.max = -std::numeric_limits<double>::infinity();
      double total = 0.0, m_eff = 0.0, runtime = 0.0;
      for (std::size_t s = 0; s < cfg.seeds.size(); ++s, ++idx) {
        const CellResult& r = results[idx];
        total += r.interference_total;
        m_eff += r.m_effective;
        runtime += r.runtime_ms;
        row.min = std::min(row.min, r.interference_total);
        row.max = std::max(row.max, r.interference_total);
        if (r.infinite_terms > 0) ++row.infinite_cells;
      }
      if (cfg.seeds.empty()) {
        row.min = 0.0;
        row.max = 0.0;
      } else {
        auto n = static_cast<double>(cfg.seeds.size());
        row.mean = total / n;
        row.mean_m_effective = m_eff / n;
        row.mean_runtime_ms = runtime / n;
      }
      rows.push_back(row);
    }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                     bool timestamp_header) {
  using detail::format_double;
  if (timestamp_header) write_timestamp(out);
  out << "algorithm,M_requested,convention,seeds,interference_mean,interference_min,"
         "interference_max,mean_M_effective,infinite_cells,mean_runtime_ms\n";
  for (const SweepRow& r : rows)
    out << to_string(r.algorithm) << "," << r.m_requested << "," << to_string(r.convention)
        << "," << r.seeds << "," << format_double(r.mean) << "," << format_double(r.min)
        << "," << format_double(r.max) << "," << format_double(r.mean_m_effective) << ","
        << r.infinite_cells << "," << format_double(r.mean_runtime_ms) << "\n";
}

void write_scatter_csv(std::ostream& out, const Scenario& s, const Partition& p) {
  using detail::format_double;
  auto bs_of = cluster_of_bs(p, static_cast<int>(s.bs_positions.size()));
  auto user_of = cluster_of_user(p, static_cast<int>(s.user_positions.size()));
  out << "kind,id,x,y,cluster_id\n";
  for (std::size_t i = 0; i < s.bs_positions.size(); ++i)
    out << "bs," << i << "," << format_double(s.bs_positions[i].x) << ","
        << format_double(s.bs_positions[i].y) << "," << bs_of[i] << "\n";
  for (std::size_t j = 0; j < s.user_positions.size(); ++j)
    out << "user," << j << "," << format_double(s.user_positions[j].x) << ","
        << format_double(s.user_positions[j].y) << "," << user_of[j] << "\n";
}

}  // namespace imclust
