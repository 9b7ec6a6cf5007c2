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
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "imclust/dph.hpp"
#include "support/brute.hpp"
#include "support/canonical.hpp"
#include "support/naive_dph.hpp"

using namespace imclust;
using imclust::testing::canonical_matrix;

TEST_CASE("dot_matrix on the canonical matrix") {
  Matrix d = dot_matrix(canonical_matrix());
  double expected[3][3] = {{16, 8, 0}, {8, 8, 8}, {0, 8, 16}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(d(i, j) == expected[i][j]);
}

TEST_CASE("dot_matrix diagonal is non-negative, zero rows stay zero") {
  std::mt19937_64 rng(11);
  WeightMatrix w = testing::random_weight_matrix(5, 4, rng);
  for (std::size_t j = 0; j < w.cols(); ++j) w(2, j) = 0.0;
  Matrix d = dot_matrix(w);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(d(i, i) >= 0.0);
    CHECK(d(2, i) == 0.0);
    CHECK(d(i, 2) == 0.0);
  }
}

TEST_CASE("rho on the canonical dot matrix") {
  MergeState state(dot_matrix(canonical_matrix()));
  CHECK(state.rho(0, 1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(state.rho(0, 2) == 0.0);  // orthogonal rows
}

TEST_CASE("rho is 1 for identical rows and 0 for zero-norm rows") {
  WeightMatrix w(3, 2);
  w(0, 0) = 2.0;
  w(0, 1) = 3.0;
  w(1, 0) = 2.0;
  w(1, 1) = 3.0;
  MergeState state(dot_matrix(w));
  CHECK(state.rho(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(state.rho(0, 2) == 0.0);  // row 2 is all zero
}

TEST_CASE("dph_clustering on the canonical matrix, M = 2") {
  DphResult r = dph_clustering(canonical_matrix(), 2);
  REQUIRE(r.trace.size() == 1);
  // rho ties between (b1,b2) and (b2,b3); the smaller id pair wins
  CHECK(r.trace[0].cluster_a == std::vector<int>{0});
  CHECK(r.trace[0].cluster_b == std::vector<int>{1});
  REQUIRE(r.clusters.size() == 2);
  CHECK(r.clusters[0] == std::vector<int>{0, 1});
  CHECK(r.clusters[1] == std::vector<int>{2});
  CHECK(r.reached_target);
}

TEST_CASE("M equal to row count means no merges") {
  DphResult r = dph_clustering(canonical_matrix(), 3);
  CHECK(r.trace.empty());
  CHECK(r.clusters.size() == 3);
}

TEST_CASE("infeasible size cap is rejected") {
  CHECK_THROWS_AS(dph_clustering(canonical_matrix(), 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(dph_clustering(canonical_matrix(), 0), std::invalid_argument);
  CHECK_THROWS_AS(dph_clustering(canonical_matrix(), 4), std::invalid_argument);
}

TEST_CASE("merge_update follows the row-sum rule") {
  MergeState state(dot_matrix(canonical_matrix()));
  state.merge(0, 1);
  CHECK(state.active_count() == 2);
  CHECK(state.dot(0, 0) == 40.0);  // 16 + 2*8 + 8
  CHECK(state.dot(0, 2) == 8.0);
  CHECK(state.members(0) == std::vector<int>{0, 1});
  CHECK_FALSE(state.is_active(1));
}

TEST_CASE("merging two zero-norm singletons keeps a zero diagonal") {
  WeightMatrix w(3, 2);
  w(0, 0) = 1.0;  // only row 0 is nonzero
  MergeState state(dot_matrix(w));
  state.merge(1, 2);
  CHECK(state.dot(1, 1) == 0.0);
  CHECK(state.active_count() == 2);
}

TEST_CASE("heap trace equals the naive rescan trace") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 25; ++trial) {
    int b = 2 + static_cast<int>(rng() % 30);
    int u = 1 + static_cast<int>(rng() % 20);
    int m = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(b));
    // sprinkle zeros and duplicate rows to force rho ties
    WeightMatrix w = testing::random_weight_matrix(b, u, rng, 0.4);
    if (b > 2 && trial % 3 == 0)
      for (std::size_t j = 0; j < w.cols(); ++j) w(1, j) = w(0, j);

    DphResult heap = dph_clustering(w, m);
    DphResult naive = testing::naive_dph_clustering(w, m);
    CHECK(testing::traces_identical(heap.trace, naive.trace));
    CHECK(heap.clusters == naive.clusters);
  }
}

TEST_CASE("heap trace equals the naive trace under a size cap") {
  std::mt19937_64 rng(90210);
  for (int trial = 0; trial < 15; ++trial) {
    int b = 4 + static_cast<int>(rng() % 20);
    int u = 2 + static_cast<int>(rng() % 10);
    int m = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(b));
    int cap = 1 + static_cast<int>(rng() % 5);
    if (static_cast<long long>(cap) * m < b) cap = (b + m - 1) / m;
    WeightMatrix w = testing::random_weight_matrix(b, u, rng, 0.3);
    DphResult heap = dph_clustering(w, m, cap);
    DphResult naive = testing::naive_dph_clustering(w, m, cap);
    CHECK(testing::traces_identical(heap.trace, naive.trace));
    CHECK(heap.clusters == naive.clusters);
    CHECK(heap.reached_target == naive.reached_target);
    for (const auto& c : heap.clusters) CHECK(c.size() <= static_cast<std::size_t>(cap));
  }
}

TEST_CASE("size cap can stop the agglomeration early, flagged") {
  // two pairs of identical high-similarity rows; cap 2, target 1: after the
  // two pair merges no admissible pair remains
  WeightMatrix w(4, 2);
  w(0, 0) = 1.0;
  w(1, 0) = 1.0;
  w(2, 1) = 1.0;
  w(3, 1) = 1.0;
  DphResult r = dph_clustering(w, 1, 2);
  CHECK_FALSE(r.reached_target);
  CHECK(r.clusters.size() == 2);
}

TEST_CASE("rho stays within [0, 1] on random inputs") {
  std::mt19937_64 rng(4242);
  WeightMatrix w = testing::random_weight_matrix(12, 8, rng, 0.2);
  MergeState state(dot_matrix(w));
  for (int k = 0; k < 12; ++k)
    for (int m = k + 1; m < 12; ++m) {
      double r = state.rho(k, m);
      CHECK(r >= 0.0);
      CHECK(r <= 1.0 + 1e-12);
    }
}

TEST_CASE("incremental dot values match from-scratch recomputation after every merge") {
  std::mt19937_64 rng(808);
  const int b = 12, u = 9;
  WeightMatrix w = testing::random_weight_matrix(b, u, rng);
  MergeState state(dot_matrix(w));

  while (state.active_count() > 1) {
    auto best = state.pop_best_pair();
    REQUIRE(best.has_value());
    state.merge(best->lo, best->hi);

    // vec(B_k) summed from w directly, then inner products
    for (int k : state.active_ids())
      for (int m : state.active_ids()) {
        std::vector<double> vk(u, 0.0), vm(u, 0.0);
        for (int row : state.members(k))
          for (int j = 0; j < u; ++j) vk[static_cast<std::size_t>(j)] += w(static_cast<std::size_t>(row), static_cast<std::size_t>(j));
        for (int row : state.members(m))
          for (int j = 0; j < u; ++j) vm[static_cast<std::size_t>(j)] += w(static_cast<std::size_t>(row), static_cast<std::size_t>(j));
        double scratch = 0.0;
        for (int j = 0; j < u; ++j)
          scratch += vk[static_cast<std::size_t>(j)] * vm[static_cast<std::size_t>(j)];
        CHECK(state.dot(k, m) == doctest::Approx(scratch).epsilon(1e-9));
      }
  }
}

TEST_CASE("scaling one row by a power of two leaves the merge trace unchanged") {
  std::mt19937_64 rng(616);
  const int b = 10, u = 7;
  WeightMatrix w = testing::random_weight_matrix(b, u, rng);
  DphResult base = dph_clustering(w, 3);
  for (double scale : {4.0, 0.5}) {
    WeightMatrix scaled = w;
    for (std::size_t j = 0; j < scaled.cols(); ++j) scaled(4, j) *= scale;
    DphResult r = dph_clustering(scaled, 3);
    // power-of-two scaling keeps every rho bit-identical
    CHECK(testing::traces_identical(base.trace, r.trace));
  }
}

TEST_CASE("merge trace serializes to CSV") {
  DphResult r = dph_clustering(canonical_matrix(), 1);
  std::ostringstream out;
  write_merge_trace_csv(out, r.trace);
  std::string csv = out.str();
  CHECK(csv.rfind("round,", 0) == 0);
  CHECK(csv.find("0,0,1,") != std::string::npos);  // first merge, singleton members
}
