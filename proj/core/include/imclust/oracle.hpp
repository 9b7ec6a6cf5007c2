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

#include <vector>

#include "imclust/matrix.hpp"
#include "imclust/metric.hpp"
#include "imclust/partition.hpp"

namespace imclust {

enum class EnumOrder { forward, reverse };

struct OracleResult {
  double value = 0.0;  // +inf when no feasible partition exists
  Partition argmin;    // lexicographically smallest assignment among ties
  bool feasible = false;
  std::vector<int> assignment;  // restricted growth string of the argmin
};

// Exhaustive minimum of the objective over all partitions of the b+u
// vertices (BSs first, then users) into exactly num_clusters nonempty
// clusters. Under the strict convention, partitions with a single-class
// cluster are infeasible and skipped. Refuses instances with more than 12
// vertices. The enumeration order flag exists so tests can cross-check the
// enumerator against itself.
OracleResult exact_minimum(const WeightMatrix& w, int num_clusters,
                           Convention convention,
                           EnumOrder order = EnumOrder::forward);

// Exact minima for cluster counts 1..max_clusters (+inf once infeasible).
std::vector<double> monotonicity_probe(const WeightMatrix& w, int max_clusters,
                                       Convention convention);

}  // namespace imclust
