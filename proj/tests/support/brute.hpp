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

// Independent from-scratch evaluators and tiny-instance enumerators used as
// test oracles. None of these share code paths with the library internals
// they check.

#include <cstdint>
#include <random>
#include <vector>

#include "imclust/matrix.hpp"
#include "imclust/metric.hpp"
#include "imclust/partition.hpp"

namespace imclust::testing {

struct BruteReport {
  bool strict_invalid = false;  // strict convention saw a BS-only cluster
  std::vector<double> terms;
  double total = 0.0;
};

// Objective by a single scan over all edges (different accumulation order
// than the library's per-cluster sums).
BruteReport edge_scan_interference(const WeightMatrix& w, const Partition& p,
                                   Convention convention);

struct BruteMatching {
  int cardinality = 0;
  double weight = 0.0;
};

// Best (cardinality, then weight) matching of user clusters to BSs over
// positive-weight edges, by exhaustive recursion.
BruteMatching enumerate_best_matching(const WeightMatrix& w,
                                      const std::vector<std::vector<int>>& user_clusters);

// Uniform(0,1) entries; a zero_fraction share of entries forced to 0.
WeightMatrix random_weight_matrix(int b, int u, std::mt19937_64& rng,
                                  double zero_fraction = 0.0);

// Random partition of 0..count-1 into exactly num_clusters nonempty groups.
std::vector<std::vector<int>> random_clusters(int count, int num_clusters,
                                              std::mt19937_64& rng);

// Random total partition; every cluster gets at least one BS and one user.
Partition random_mixed_partition(int b, int u, int num_clusters, std::mt19937_64& rng);

}  // namespace imclust::testing
