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

#include <limits>
#include <random>

#include "imclust/assign.hpp"
#include "imclust/metric.hpp"
#include "support/brute.hpp"
#include "support/canonical.hpp"

using namespace imclust;
using imclust::testing::canonical_matrix;

TEST_CASE("assign_users_best on the canonical matrix") {
  WeightMatrix w = canonical_matrix();
  UserAssignment r = assign_users_best(w, {{0, 1}, {2}});
  REQUIRE(r.partition.clusters.size() == 2);
  CHECK(r.partition.clusters[0] == Cluster{{0, 1}, {0}});
  CHECK(r.partition.clusters[1] == Cluster{{2}, {1}});
  CHECK(r.clusters_discarded == 0);
  CHECK(r.zero_weight_users.empty());
}

TEST_CASE("assign_users_best ties go to the lowest cluster") {
  WeightMatrix w(2, 1);
  w(0, 0) = 3.0;
  w(1, 0) = 3.0;
  UserAssignment r = assign_users_best(w, {{1}, {0}});  // both sums equal 3
  CHECK(r.partition.clusters.size() == 1);
  CHECK(r.partition.clusters[0].bs_ids == std::vector<int>{1});
  CHECK(r.clusters_discarded == 1);
}

TEST_CASE("assign_users_best with one cluster takes every user") {
  WeightMatrix w = canonical_matrix();
  UserAssignment r = assign_users_best(w, {{0, 1, 2}});
  REQUIRE(r.partition.clusters.size() == 1);
  CHECK(r.partition.clusters[0].user_ids == std::vector<int>{0, 1});
}

TEST_CASE("zero-weight users are parked in cluster 0 and flagged") {
  WeightMatrix w(2, 2);
  w(0, 0) = 1.0;  // user 1 sees nothing
  UserAssignment r = assign_users_best(w, {{0}, {1}});
  CHECK(r.zero_weight_users == std::vector<int>{1});
  CHECK(r.partition.clusters[0].user_ids == std::vector<int>{0, 1});
}

TEST_CASE("assign_bs_best splits rows by user clusters") {
  WeightMatrix w = canonical_matrix();
  BsAssignment r = assign_bs_best(w, {{0}, {1}});
  CHECK(r.cluster_of_bs == std::vector<int>{0, 0, 1});  // b2 ties, lowest wins
  CHECK(r.zero_weight_bs.empty());

  BsAssignment single = assign_bs_best(w, {{0, 1}});
  CHECK(single.cluster_of_bs == std::vector<int>{0, 0, 0});
}

TEST_CASE("assign_bs_best is the per-user argmax property, randomized") {
  std::mt19937_64 rng(1212);
  for (int trial = 0; trial < 10; ++trial) {
    int b = 3 + static_cast<int>(rng() % 8);
    int u = 3 + static_cast<int>(rng() % 8);
    int m = 1 + static_cast<int>(rng() % 3);
    if (m > u) m = u;
    WeightMatrix w = testing::random_weight_matrix(b, u, rng, 0.2);
    auto clusters = testing::random_clusters(u, m, rng);
    BsAssignment r = assign_bs_best(w, clusters);
    for (int i = 0; i < b; ++i) {
      double chosen = 0.0, best = 0.0;
      for (int k = 0; k < m; ++k) {
        double s = 0.0;
        for (int j : clusters[static_cast<std::size_t>(k)])
          s += w(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        if (k == r.cluster_of_bs[static_cast<std::size_t>(i)]) chosen = s;
        best = std::max(best, s);
      }
      CHECK(chosen == best);
    }
  }
}

TEST_CASE("match_clusters on the canonical matrix") {
  WeightMatrix w = canonical_matrix();
  ClusterMatching m = match_clusters(w, {{0}, {1}});
  REQUIRE(m.pairs.size() == 2);
  CHECK(m.pairs[0] == std::pair<int, int>{0, 0});
  CHECK(m.pairs[1] == std::pair<int, int>{1, 2});
  CHECK(m.weights[0] == 4.0);
  CHECK(m.weights[1] == 4.0);
  CHECK(m.unmatched_clusters.empty());
}

TEST_CASE("match_clusters trivial and unmatchable cases") {
  WeightMatrix w(1, 1);
  w(0, 0) = 2.0;
  ClusterMatching m = match_clusters(w, {{0}});
  REQUIRE(m.pairs.size() == 1);
  CHECK(m.pairs[0] == std::pair<int, int>{0, 0});

  WeightMatrix z(2, 2);
  z(0, 0) = 1.0;  // user 1's cluster sees only zeros
  ClusterMatching unmatched = match_clusters(z, {{0}, {1}});
  CHECK(unmatched.pairs.size() == 1);
  CHECK(unmatched.unmatched_clusters == std::vector<int>{1});
}

TEST_CASE("match_clusters equals exhaustive enumeration") {
  std::mt19937_64 rng(9000);
  for (int trial = 0; trial < 60; ++trial) {
    int b = 2 + static_cast<int>(rng() % 7);  // up to 8 BSs
    int u = 2 + static_cast<int>(rng() % 6);
    int m = 1 + static_cast<int>(rng() % 6);  // up to 6 clusters
    if (m > u) m = u;
    WeightMatrix w = testing::random_weight_matrix(b, u, rng, 0.5);
    auto clusters = testing::random_clusters(u, m, rng);
    ClusterMatching got = match_clusters(w, clusters);
    testing::BruteMatching want = testing::enumerate_best_matching(w, clusters);
    CHECK(static_cast<int>(got.pairs.size()) == want.cardinality);
    double got_weight = 0.0;
    for (double x : got.weights) got_weight += x;
    CHECK(got_weight == doctest::Approx(want.weight).epsilon(1e-12));
  }
}

TEST_CASE("dph_matching_best on the canonical matrix") {
  WeightMatrix w = canonical_matrix();
  MatchingBestResult r = dph_matching_best(w, 2);
  REQUIRE(r.partition.clusters.size() == 2);
  CHECK(r.partition.clusters[0] == Cluster{{0, 1}, {0}});
  CHECK(r.partition.clusters[1] == Cluster{{2}, {1}});
  validate_partition(r.partition, 3, 2, true);
}

TEST_CASE("dph_matching_best with M = 1 collects everything") {
  WeightMatrix w = canonical_matrix();
  MatchingBestResult r = dph_matching_best(w, 1);
  REQUIRE(r.partition.clusters.size() == 1);
  CHECK(r.partition.clusters[0] == Cluster{{0, 1, 2}, {0, 1}});
}

TEST_CASE("dph_matching_best with singleton user clusters matches distinct BSs") {
  WeightMatrix w = canonical_matrix();
  MatchingBestResult r = dph_matching_best(w, 2);  // u = 2, so M = u
  REQUIRE(r.matching.pairs.size() == 2);
  CHECK(r.matching.pairs[0].second != r.matching.pairs[1].second);
  // no user-only cluster when the matching is perfect
  for (const Cluster& c : r.partition.clusters) CHECK(!c.bs_ids.empty());
}

TEST_CASE("prune_bs removes a BS that only adds cut weight") {
  // cluster {b0,b1,u0}: b1's weight goes entirely to the outside user
  WeightMatrix w(2, 2);
  w(0, 0) = 10.0;
  w(1, 1) = 3.0;
  Partition p{{{{0, 1}, {0}}, {{}, {1}}}};
  // user-only cluster is allowed as prune input; it just stays infinite
  PruneResult r = prune_bs(w, p);
  CHECK(r.switched_off == std::vector<int>{1});
  CHECK(r.partition.clusters[0] == Cluster{{0}, {0}});
}

TEST_CASE("prune_bs leaves a local optimum untouched") {
  WeightMatrix w = canonical_matrix();
  Partition p{{{{0, 1}, {0}}, {{2}, {1}}}};
  PruneResult r = prune_bs(w, p);
  CHECK(r.switched_off.empty());
  CHECK(r.partition == p);
}

TEST_CASE("prune_bs never removes the only BS of a served cluster") {
  WeightMatrix w(1, 2);
  w(0, 0) = 1.0;
  w(0, 1) = 100.0;  // huge cut, still must keep serving user 0
  Partition p{{{{0}, {0}}, {{}, {1}}}};
  PruneResult r = prune_bs(w, p);
  CHECK(r.switched_off.empty());
}

TEST_CASE("prune_bs never increases the switch_off objective, randomized") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    int b = 2 + static_cast<int>(rng() % 8);
    int u = 2 + static_cast<int>(rng() % 8);
    int m = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::min(b, u)));
    WeightMatrix w = testing::random_weight_matrix(b, u, rng, 0.4);
    Partition p = testing::random_mixed_partition(b, u, m, rng);
    PruneResult r = prune_bs(w, p);

    double before = interference(w, p, Convention::switch_off).total;
    Partition after = r.partition;
    if (!r.switched_off.empty()) after.clusters.push_back({r.switched_off, {}});
    double after_total = interference(w, after, Convention::switch_off).total;
    if (before == std::numeric_limits<double>::infinity())
      CHECK(after_total <= before);
    else
      CHECK(after_total <= before + 1e-9 * std::max(1.0, before));
  }
}
