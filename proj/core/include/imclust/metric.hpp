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
#include <string_view>
#include <vector>

#include "imclust/matrix.hpp"
#include "imclust/partition.hpp"

namespace imclust {

// How zero-denominator clusters are treated when scoring a partition.
//
// strict:     every cluster must contain at least one BS; a cluster whose
//             users have zero internal weight scores +infinity. BS-only
//             clusters are rejected outright (std::invalid_argument).
// switch_off: BS-only clusters contribute 0 and their BSs' rows are removed
//             from the matrix before any other cluster is scored. User-only
//             clusters still score +infinity.
enum class Convention { strict, switch_off };

std::string_view to_string(Convention c);
Convention convention_from_string(std::string_view s);

// Per-cluster normalized cut terms. Infinities are IEEE +inf produced by
// explicit zero-denominator guards, never by dividing.
struct InterferenceReport {
  Convention convention = Convention::strict;
  std::vector<double> per_cluster_terms;
  double total = 0.0;  // +inf as soon as any term is +inf
  int infinite_terms = 0;
};

// CSV row: convention,term;term;...,total
void write_interference_csv_row(std::ostream& out, const InterferenceReport& r);

// Total weight of BS-user edges inside the cluster. BS ids ascending, user
// ids ascending (fixed accumulation order).
double intra_weight(const WeightMatrix& w, const Cluster& c);

// Total weight of BS-user edges with exactly one endpoint in the cluster.
double cut_weight(const WeightMatrix& w, const Cluster& c);

InterferenceReport interference(const WeightMatrix& w, const Partition& p,
                                Convention convention);

// capacity(k): total weight incoming to the cluster's users from all BSs.
// usage(k):    total weight outgoing from the cluster's BSs to all users.
struct ClusterLoad {
  double capacity = 0.0;
  double usage = 0.0;
};

std::vector<ClusterLoad> capacity_usage(const WeightMatrix& w, const Partition& p);

}  // namespace imclust
