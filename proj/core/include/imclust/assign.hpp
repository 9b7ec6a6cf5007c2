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

#include <optional>
#include <utility>
#include <vector>

#include "imclust/dph.hpp"
#include "imclust/matrix.hpp"
#include "imclust/partition.hpp"

namespace imclust {

struct UserAssignment {
  // Clusters that kept at least one user, in input cluster order. BSs of
  // discarded clusters appear nowhere (treat them as switched off).
  Partition partition;
  int clusters_discarded = 0;
  // Users with zero weight to every cluster; parked in cluster 0.
  std::vector<int> zero_weight_users;
};

// Sends each user to the BS cluster with the largest summed weight to it
// (ties: lowest cluster index); drops clusters left without users.
UserAssignment assign_users_best(const WeightMatrix& w,
                                 const std::vector<std::vector<int>>& bs_clusters);

struct BsAssignment {
  std::vector<int> cluster_of_bs;
  std::vector<int> zero_weight_bs;  // parked in cluster 0
};

// Mirror rule for BSs against fixed user clusters.
BsAssignment assign_bs_best(const WeightMatrix& w,
                            const std::vector<std::vector<int>>& user_clusters);

struct ClusterMatching {
  std::vector<std::pair<int, int>> pairs;  // (user-cluster, bs), cluster-ascending
  std::vector<double> weights;             // summed weight of each matched pair
  std::vector<int> unmatched_clusters;     // no positive-weight BS available
};

// Maximum-cardinality matching of user clusters to distinct BSs over edges
// with positive summed weight; maximum total weight among those. Exact
// (successive shortest augmenting paths).
ClusterMatching match_clusters(const WeightMatrix& w,
                               const std::vector<std::vector<int>>& user_clusters);

struct MatchingBestResult {
  Partition partition;
  ClusterMatching matching;
  std::vector<int> zero_weight_bs;
  bool reached_target = true;  // from the user-side agglomeration
};

// User-side DPH clustering, one BS matched to each cluster, remaining BSs by
// the best-cluster rule.
MatchingBestResult dph_matching_best(const WeightMatrix& w, int num_clusters,
                                     std::optional<int> size_cap = std::nullopt);

struct PruneResult {
  Partition partition;
  std::vector<int> switched_off;  // ascending
};

// Greedy post-pass: remove a BS from its cluster whenever that strictly
// lowers the cluster's own cut/intra term. Scans BS ids ascending, repeats
// to fixpoint. Removed BSs' rows are treated as zero for every evaluation
// that follows, matching switch-off semantics. The partition must cover all
// users; BSs it does not cover count as switched off from the start (they
// are not reported in switched_off).
PruneResult prune_bs(const WeightMatrix& w, const Partition& p);

}  // namespace imclust
