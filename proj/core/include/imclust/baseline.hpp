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
#include <stdexcept>

#include "imclust/matrix.hpp"
#include "imclust/partition.hpp"

namespace imclust {

// Input on which no meaningful clustering exists (e.g. an all-zero weight
// matrix).
class DegenerateInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SpectralConfig {
  int num_clusters = 1;
  int kmeans_restarts = 10;
  int kmeans_max_iters = 100;
  std::uint64_t seed = 0;
};

// Normalized-cut spectral baseline on the joint bipartite graph: symmetric
// normalized Laplacian of the (b+u)-vertex adjacency, M smallest
// eigenvectors, row-normalized embedding, seeded k-means with restarts.
// Isolated vertices get unit degree so the Laplacian stays defined. User-only
// clusters are repaired by moving in the highest-affinity BS from a cluster
// that can spare one. Deterministic per seed.
//
// Throws DegenerateInputError when w is all zero.
Partition spectral_clustering(const WeightMatrix& w, const SpectralConfig& cfg);

}  // namespace imclust
