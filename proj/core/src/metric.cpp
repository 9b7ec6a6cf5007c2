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
#include "imclust/metric.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

#include "text_io.hpp"

namespace imclust {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<char> member_mask(const std::vector<int>& ids, std::size_t n,
                              const char* what) {
  std::vector<char> mask(n, 0);
  for (int id : ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= n)
      throw std::invalid_argument(std::string(what) + " id out of range");
    mask[static_cast<std::size_t>(id)] = 1;
  }
  return mask;
}
}  // namespace

std::string_view to_string(Convention c) {
  return c == Convention::strict ? "strict" : "switch_off";
}

Convention convention_from_string(std::string_view s) {
  if (s == "strict") return Convention::strict;
  if (s == "switch_off") return Convention::switch_off;
  throw std::invalid_argument("unknown convention: " + std::string(s));
}

double intra_weight(const WeightMatrix& w, const Cluster& c) {
  for (int j : c.user_ids)
    if (j < 0 || static_cast<std::size_t>(j) >= w.cols())
      throw std::invalid_argument("user id out of range");
  double acc = 0.0;
  for (int i : c.bs_ids) {
    if (i < 0 || static_cast<std::size_t>(i) >= w.rows())
      throw std::invalid_argument("bs id out of range");
    for (int j : c.user_ids) acc += w(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }
  return acc;
}

double cut_weight(const WeightMatrix& w, const Cluster& c) {
  auto bs_in = member_mask(c.bs_ids, w.rows(), "bs");
  auto user_in = member_mask(c.user_ids, w.cols(), "user");
  double acc = 0.0;
  for (int i : c.bs_ids)
    for (std::size_t j = 0; j < w.cols(); ++j)
      if (!user_in[j]) acc += w(static_cast<std::size_t>(i), j);
  for (int j : c.user_ids)
    for (std::size_t i = 0; i < w.rows(); ++i)
      if (!bs_in[i]) acc += w(i, static_cast<std::size_t>(j));
  return acc;
}

InterferenceReport interference(const WeightMatrix& w, const Partition& p,
                                Convention convention) {
  for (const Cluster& c : p.clusters)
    if (c.bs_ids.empty() && c.user_ids.empty())
      throw std::invalid_argument("empty cluster");

  const WeightMatrix* eval = &w;
  WeightMatrix zeroed;
  if (convention == Convention::switch_off) {
    std::vector<int> off;
    for (const Cluster& c : p.clusters)
      if (c.user_ids.empty()) off.insert(off.end(), c.bs_ids.begin(), c.bs_ids.end());
    if (!off.empty()) {
      zeroed = with_rows_zeroed(w, off);
      eval = &zeroed;
    }
  }

  InterferenceReport report;
  report.convention = convention;
  report.per_cluster_terms.reserve(p.clusters.size());
  for (const Cluster& c : p.clusters) {
    double term;
    if (c.user_ids.empty()) {
      if (convention == Convention::strict)
        throw std::invalid_argument("BS-only cluster under the strict convention");
      term = 0.0;  // switched off
    } else if (c.bs_ids.empty()) {
      term = kInf;  // users with no BS
    } else {
      double intra = intra_weight(*eval, c);
      term = intra == 0.0 ? kInf : cut_weight(*eval, c) / intra;
    }
    report.per_cluster_terms.push_back(term);
  }
  double total = 0.0;
  for (double t : report.per_cluster_terms) {
    total += t;
    if (t == kInf) ++report.infinite_terms;
  }
  report.total = total;
  return report;
}

void write_interference_csv_row(std::ostream& out, const InterferenceReport& r) {
  out << to_string(r.convention) << ",";
  for (std::size_t i = 0; i < r.per_cluster_terms.size(); ++i) {
    if (i) out << ";";
    out << detail::format_double(r.per_cluster_terms[i]);
  }
  out << "," << detail::format_double(r.total) << "\n";
}

std::vector<ClusterLoad> capacity_usage(const WeightMatrix& w, const Partition& p) {
  std::vector<ClusterLoad> loads(p.clusters.size());
  for (std::size_t k = 0; k < p.clusters.size(); ++k) {
    const Cluster& c = p.clusters[k];
    double cap = 0.0;
    for (int j : c.user_ids) {
      if (j < 0 || static_cast<std::size_t>(j) >= w.cols())
        throw std::invalid_argument("user id out of range");
      for (std::size_t i = 0; i < w.rows(); ++i) cap += w(i, static_cast<std::size_t>(j));
    }
    double usage = 0.0;
    for (int i : c.bs_ids) {
      if (i < 0 || static_cast<std::size_t>(i) >= w.rows())
        throw std::invalid_argument("bs id out of range");
      const double* row = w.row(static_cast<std::size_t>(i));
      for (std::size_t j = 0; j < w.cols(); ++j) usage += row[j];
    }
    loads[k] = {cap, usage};
  }
  return loads;
}

}  // namespace imclust
