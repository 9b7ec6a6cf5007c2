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
#include "support/naive_dph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace imclust::testing {

Matrix naive_dot_matrix(const Matrix& w) {
  Matrix d(w.rows(), w.rows());
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t j = 0; j < w.rows(); ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < w.cols(); ++k) acc += w(i, k) * w(j, k);
      d(i, j) = acc;
    }
  return d;
}

DphResult naive_dph_clustering(const WeightMatrix& w, int num_clusters,
                               std::optional<int> size_cap) {
  const int b = static_cast<int>(w.rows());
  if (num_clusters < 1 || num_clusters > b) throw std::invalid_argument("bad cluster count");
  if (size_cap && static_cast<long long>(*size_cap) * num_clusters < b)
    throw std::invalid_argument("infeasible size cap");

  // dot rows are summed exactly like the library does, so rho values are
  // bit-identical; only pair selection differs (full rescan, no heap).
  Matrix dot(static_cast<std::size_t>(b), static_cast<std::size_t>(b));
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t j = i; j < w.rows(); ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < w.cols(); ++k) acc += w(i, k) * w(j, k);
      dot(i, j) = acc;
      dot(j, i) = acc;
    }

  std::vector<int> active;
  std::vector<std::vector<int>> members(static_cast<std::size_t>(b));
  for (int i = 0; i < b; ++i) {
    active.push_back(i);
    members[static_cast<std::size_t>(i)] = {i};
  }

  auto rho = [&dot](int k, int m) {
    double dkk = dot(static_cast<std::size_t>(k), static_cast<std::size_t>(k));
    double dmm = dot(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
    if (dkk == 0.0 || dmm == 0.0) return 0.0;
    return dot(static_cast<std::size_t>(k), static_cast<std::size_t>(m)) / std::sqrt(dkk * dmm);
  };

  DphResult result;
  int round = 0;
  while (static_cast<int>(active.size()) > num_clusters) {
    int best_lo = -1, best_hi = -1;
    double best_rho = -1.0;
    for (std::size_t a = 0; a < active.size(); ++a)
      for (std::size_t c = a + 1; c < active.size(); ++c) {
        int lo = active[a], hi = active[c];
        if (size_cap && members[static_cast<std::size_t>(lo)].size() +
                                members[static_cast<std::size_t>(hi)].size() >
                            static_cast<std::size_t>(*size_cap))
          continue;
        double r = rho(lo, hi);
        bool better = r > best_rho ||
                      (r == best_rho && (lo < best_lo || (lo == best_lo && hi < best_hi)));
        if (better) {
          best_rho = r;
          best_lo = lo;
          best_hi = hi;
        }
      }
    if (best_lo == -1) {
      result.reached_target = false;
      break;
    }

    result.trace.push_back({round, members[static_cast<std::size_t>(best_lo)],
                            members[static_cast<std::size_t>(best_hi)], best_rho});

    const auto lo = static_cast<std::size_t>(best_lo);
    const auto hi = static_cast<std::size_t>(best_hi);
    const double diag = dot(lo, lo) + 2.0 * dot(lo, hi) + dot(hi, hi);
    for (int x : active) {
      const auto xs = static_cast<std::size_t>(x);
      if (xs == lo || xs == hi) continue;
      const double v = dot(lo, xs) + dot(hi, xs);
      dot(lo, xs) = v;
      dot(xs, lo) = v;
    }
    dot(lo, lo) = diag;

    std::vector<int> merged;
    std::merge(members[lo].begin(), members[lo].end(), members[hi].begin(), members[hi].end(),
               std::back_inserter(merged));
    members[lo] = std::move(merged);
    active.erase(std::find(active.begin(), active.end(), best_hi));
    ++round;
  }
  for (int id : active) result.clusters.push_back(members[static_cast<std::size_t>(id)]);
  return result;
}

bool traces_identical(const std::vector<MergeRecord>& a, const std::vector<MergeRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].round != b[i].round || a[i].cluster_a != b[i].cluster_a ||
        a[i].cluster_b != b[i].cluster_b || a[i].rho != b[i].rho)
      return false;
  return true;
}

}  // namespace imclust::testing
