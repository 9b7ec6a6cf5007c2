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
#include <queue>
#include <vector>

#include "imclust/matrix.hpp"

namespace imclust {

// Gram matrix of the rows of w: entry (i, j) = <row_i, row_j>, accumulated
// over columns in ascending order.
Matrix dot_matrix(const Matrix& w);

// Live agglomeration state for dot-product hierarchical clustering.
//
// A cluster is identified by the smallest original row id it contains. The
// dot matrix row of a cluster is the sum of its members' rows, maintained
// incrementally. Candidate pairs live in a max-heap ordered by rho (ties:
// smaller id pair first) with lazy deletion: entries carry per-cluster
// version stamps and are discarded on pop when a stamp is stale.
class MergeState {
 public:
  struct Candidate {
    int lo = -1;
    int hi = -1;
    double rho = 0.0;
  };

  explicit MergeState(Matrix dot, std::optional<int> size_cap = std::nullopt);

  int size() const { return static_cast<int>(members_.size()); }
  int active_count() const { return static_cast<int>(active_ids_.size()); }
  bool is_active(int id) const;
  const std::vector<int>& active_ids() const { return active_ids_; }
  const std::vector<int>& members(int id) const;

  double dot(int k, int m) const;

  // Cosine similarity of the two cluster signal vectors, from the cached dot
  // values: dot(k,m) / sqrt(dot(k,k)*dot(m,m)); 0 when either norm is 0.
  double rho(int k, int m) const;

  // Highest-rho pair whose merged size respects the cap; ties resolve to the
  // lexicographically smallest (lo, hi). nullopt once no admissible pair is
  // left. The returned entry is consumed.
  std::optional<Candidate> pop_best_pair();

  // Merges the two clusters: sums their dot rows, retires the larger id,
  // bumps version stamps and enqueues the new cluster's candidate pairs.
  void merge(int k, int m);

 private:
  struct HeapEntry {
    double rho;
    int lo, hi;
    std::uint32_t ver_lo, ver_hi;
  };
  struct HeapCmp {
    bool operator()(const HeapEntry& a, const HeapEntry& b) const {
      if (a.rho != b.rho) return a.rho < b.rho;
      if (a.lo != b.lo) return a.lo > b.lo;
      return a.hi > b.hi;
    }
  };

  bool admissible(int k, int m) const;
  void push_pair(int k, int m);

  Matrix dot_;
  std::optional<int> size_cap_;
  std::vector<char> active_;
  std::vector<int> active_ids_;  // ascending
  std::vector<std::vector<int>> members_;
  std::vector<std::uint32_t> version_;
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapCmp> heap_;
};

struct MergeRecord {
  int round = 0;
  std::vector<int> cluster_a;  // members before the merge, ascending
  std::vector<int> cluster_b;
  double rho = 0.0;
};

struct DphResult {
  std::vector<std::vector<int>> clusters;  // in ascending min-id order
  std::vector<MergeRecord> trace;
  // false when the size cap exhausted admissible pairs before reaching the
  // requested cluster count; `clusters` then holds the partition as-is.
  bool reached_target = true;
};

// Agglomerates the rows of w down to num_clusters clusters, each round
// merging the admissible pair with maximum rho. size_cap, when set, bounds
// cluster sizes; requires size_cap * num_clusters >= rows.
DphResult dph_clustering(const WeightMatrix& w, int num_clusters,
                         std::optional<int> size_cap = std::nullopt);

// CSV: round,a;a;...,b;b;...,rho
void write_merge_trace_csv(std::ostream& out, const std::vector<MergeRecord>& trace);

}  // namespace imclust
