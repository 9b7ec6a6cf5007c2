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

#include <iosfwd>
#include <optional>
#include <vector>

#include "imclust/matrix.hpp"
#include "imclust/partition.hpp"

namespace imclust {

// Preference data for matching BSs onto fixed user clusters.
//
// pref_bs(i, k)      = sum of w(i, j) over users j of cluster k.
// pref_cluster(k, i) = -(row sum of i) / pref_bs(i, k); the bottom element
//                      (-infinity, via an explicit guard) when pref_bs is 0.
// capacity(k)        = total weight incoming to cluster k's users.
struct PreferenceTable {
  Matrix pref_bs;                // b x M
  Matrix pref_cluster;           // M x b
  std::vector<double> capacity;  // per cluster
  std::vector<double> row_sums;  // per BS
};

PreferenceTable build_preferences(const WeightMatrix& w,
                                  const std::vector<std::vector<int>>& user_clusters);

struct StableOptions {
  // A BS never proposes to a cluster it prefers less than half its best;
  // if every admissible cluster rejects it, it joins its most preferred
  // cluster after the proposal loop and is exempt from ejection.
  bool preference_floor = false;
  std::optional<int> size_cap;  // forwarded to the user-side agglomeration
};

struct StableResult {
  Partition partition;
  PreferenceTable prefs;
  int proposals = 0;  // bounded by b * M
  // usage(k) >= capacity(k), once true, stayed true (checked online).
  bool usage_monotone_ok = true;
  // BSs rejected everywhere that joined their top cluster afterwards.
  std::vector<int> fallback_bs;
  bool degenerate = false;  // all-zero weight matrix
  bool reached_target = true;
};

// Deferred-acceptance proposal loop over fixed user clusters. BSs propose in
// ascending id order (ejected BSs re-queue FIFO); a cluster ejects its least
// preferred member (ties: highest id) while usage stays at or above capacity
// without that member.
StableResult stable_extend(const WeightMatrix& w,
                           const std::vector<std::vector<int>>& user_clusters,
                           const StableOptions& opts = {});

// User-side DPH clustering followed by stable_extend.
StableResult stable_clustering(const WeightMatrix& w, int num_clusters,
                               const StableOptions& opts = {});

struct BlockingPair {
  int bs = -1;             // envies other_cluster
  int other_cluster = -1;  // would drop other_bs for it
  int other_bs = -1;
};

struct StabilityReport {
  bool saturation_ok = true;
  std::vector<int> saturation_violations;  // cluster indices
  std::vector<BlockingPair> blocking_pairs;
};

// Checks the proposal-loop exit condition per cluster
// (usage(k) - row_sum(least preferred member) < capacity(k)) and reports
// every blocking pair. Cluster k of p must correspond to column k of prefs.
StabilityReport verify_stable(const WeightMatrix& w, const Partition& p,
                              const PreferenceTable& prefs);

struct EpsilonClusterReport {
  int cluster = 0;
  double usage = 0.0;
  double capacity = 0.0;
  double epsilon = 0.0;  // max(0, capacity/usage - 1)
  double c_k = 0.0;      // -min pref_cluster over members
  double term = 0.0;     // cut/intra of the cluster
  double bound = 0.0;    // (2 + epsilon) * c_k - 2
  bool skipped = false;  // usage == 0
  bool ok = true;        // term <= bound within 1e-9 relative slack
};

std::vector<EpsilonClusterReport> epsilon_bound_check(const WeightMatrix& w,
                                                      const Partition& p,
                                                      const PreferenceTable& prefs);

// CSV: cluster,usage,capacity,epsilon,c_k,term,bound
void write_epsilon_report_csv(std::ostream& out,
                              const std::vector<EpsilonClusterReport>& reports);

}  // namespace imclust
