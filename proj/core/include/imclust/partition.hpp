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
#include <vector>

namespace imclust {

struct Cluster {
  std::vector<int> bs_ids;    // ascending
  std::vector<int> user_ids;  // ascending
  bool operator==(const Cluster&) const = default;
};

// A clustering of the bipartite vertex set. Clusters are pairwise disjoint
// and nonempty; a partition may be partial on the BS side (switched-off or
// discarded BSs appear in no cluster).
struct Partition {
  std::vector<Cluster> clusters;
  bool operator==(const Partition&) const = default;
};

// Sorts ids inside every cluster.
void normalize(Partition& p);

// Disjointness, id ranges, nonempty clusters; full coverage of both classes
// when require_total. Throws std::invalid_argument on violation.
void validate_partition(const Partition& p, int num_bs, int num_users,
                        bool require_total);

// Cluster index per vertex id, -1 where unassigned.
std::vector<int> cluster_of_bs(const Partition& p, int num_bs);
std::vector<int> cluster_of_user(const Partition& p, int num_users);

std::vector<int> unassigned_bs(const Partition& p, int num_bs);

// CSV lines "kind,id,cluster", BSs first, both in id order.
void write_partition_csv(std::ostream& out, const Partition& p);
Partition read_partition_csv(std::istream& in);

}  // namespace imclust
