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
#include "imclust/oracle.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>

namespace imclust {

namespace {

constexpr int kMaxVertices = 12;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Enumerator {
  const WeightMatrix& w;
  int num_bs;
  int num_users;
  int num_clusters;
  Convention convention;
  EnumOrder order;

  std::vector<int> labels;
  bool has_candidate = false;
  double best_value = kInf;
  std::vector<int> best_labels;

  // Objective of the labeled partition; nullopt when infeasible under strict.
  std::optional<double> evaluate() const {
    const auto m = static_cast<std::size_t>(num_clusters);
    std::vector<char> has_bs(m, 0), has_user(m, 0);
    for (int i = 0; i < num_bs; ++i) has_bs[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])] = 1;
    for (int j = 0; j < num_users; ++j)
      has_user[static_cast<std::size_t>(labels[static_cast<std::size_t>(num_bs + j)])] = 1;

    std::vector<char> off(m, 0);  // BS-only clusters under switch_off
    for (std::size_t k = 0; k < m; ++k) {
      bool single_class = has_bs[k] != has_user[k];
      if (convention == Convention::strict && single_class) return std::nullopt;
      if (convention == Convention::switch_off && has_bs[k] && !has_user[k]) off[k] = 1;
    }

    std::vector<double> intra(m, 0.0), cut(m, 0.0);
    for (int i = 0; i < num_bs; ++i) {
      const auto li = static_cast<std::size_t>(labels[static_cast<std::size_t>(i)]);
      if (off[li]) continue;  // switched-off BS contributes nothing
      for (int j = 0; j < num_users; ++j) {
        const auto lj = static_cast<std::size_t>(labels[static_cast<std::size_t>(num_bs + j)]);
        double v = w(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        if (li == lj) {
          intra[li] += v;
        } else {
          cut[li] += v;
          cut[lj] += v;
        }
      }
    }

    double total = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      double term;
      if (off[k])
        term = 0.0;
      else if (!has_bs[k])
        term = kInf;
      else if (!has_user[k])
        term = 0.0;  // strict never reaches this branch
      else
        term = intra[k] == 0.0 ? kInf : cut[k] / intra[k];
      total += term;
    }
    return total;
  }

  void visit() {
    auto value = evaluate();
    if (!value) return;
    bool better = !has_candidate || *value < best_value ||
                  (*value == best_value && labels < best_labels);
    if (better) {
      has_candidate = true;
      best_value = *value;
      best_labels = labels;
    }
  }

  void recurse(int pos, int max_label) {
    const int n = num_bs + num_users;
    if (pos == n) {
      if (max_label + 1 == num_clusters) visit();
      return;
    }
    if (max_label + 1 + (n - pos) < num_clusters) return;  // cannot reach M blocks
    const int top = std::min(max_label + 1, num_clusters - 1);
    if (order == EnumOrder::forward) {
      for (int d = 0; d <= top; ++d) {
        labels[static_cast<std::size_t>(pos)] = d;
        recurse(pos + 1, std::max(max_label, d));
      }
    } else {
      for (int d = top; d >= 0; --d) {
        labels[static_cast<std::size_t>(pos)] = d;
        recurse(pos + 1, std::max(max_label, d));
      }
    }
  }
};

}  // namespace

OracleResult exact_minimum(const WeightMatrix& w, int num_clusters,
                           Convention convention, EnumOrder order) {
  validate_weight_matrix(w);
  const int n = static_cast<int>(w.rows()) + static_cast<int>(w.cols());
  if (n > kMaxVertices)
    throw std::invalid_argument("instance too large for exhaustive enumeration");
  if (num_clusters < 1 || num_clusters > n)
    throw std::invalid_argument("cluster count must be in [1, vertices]");

  Enumerator e{w, static_cast<int>(w.rows()), static_cast<int>(w.cols()),
               num_clusters, convention, order};
  e.labels.assign(static_cast<std::size_t>(n), 0);
  e.recurse(0, -1);

  OracleResult result;
  result.value = e.best_value;
  result.feasible = e.has_candidate && e.best_value < kInf;
  if (e.has_candidate) {
    result.assignment = e.best_labels;
    result.argmin.clusters.resize(static_cast<std::size_t>(num_clusters));
    for (int i = 0; i < e.num_bs; ++i)
      result.argmin.clusters[static_cast<std::size_t>(e.best_labels[static_cast<std::size_t>(i)])]
          .bs_ids.push_back(i);
    for (int j = 0; j < e.num_users; ++j)
      result.argmin
          .clusters[static_cast<std::size_t>(e.best_labels[static_cast<std::size_t>(e.num_bs + j)])]
          .user_ids.push_back(j);
  }
  return result;
}

std::vector<double> monotonicity_probe(const WeightMatrix& w, int max_clusters,
                                       Convention convention) {
  const int n = static_cast<int>(w.rows()) + static_cast<int>(w.cols());
  if (max_clusters < 1 || max_clusters > n)
    throw std::invalid_argument("max cluster count must be in [1, vertices]");
  std::vector<double> minima;
  minima.reserve(static_cast<std::size_t>(max_clusters));
  for (int m = 1; m <= max_clusters; ++m)
    minima.push_back(exact_minimum(w, m, convention).value);
  return minima;
}

}  // namespace imclust
