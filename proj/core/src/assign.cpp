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
#include "imclust/assign.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace imclust {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Ids must be disjoint and in [0, count); full coverage when total.
void check_clusters(const std::vector<std::vector<int>>& clusters, std::size_t count,
                    bool total, const char* what) {
  if (clusters.empty()) throw std::invalid_argument("cluster list is empty");
  std::vector<char> seen(count, 0);
  std::size_t n = 0;
  for (const auto& c : clusters)
    for (int id : c) {
      if (id < 0 || static_cast<std::size_t>(id) >= count)
        throw std::invalid_argument(std::string(what) + " id out of range");
      if (seen[static_cast<std::size_t>(id)])
        throw std::invalid_argument(std::string(what) + " clusters overlap");
      seen[static_cast<std::size_t>(id)] = 1;
      ++n;
    }
  if (total && n != count)
    throw std::invalid_argument(std::string(what) + " clusters must cover every id");
}

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// argmax_k sum_{j in user_clusters[k]} w(i, j); ties to the lowest k.
std::pair<int, double> best_cluster_for_bs(const WeightMatrix& w,
                                           const std::vector<std::vector<int>>& user_clusters,
                                           int i) {
  int best = 0;
  double best_sum = -1.0;
  for (std::size_t k = 0; k < user_clusters.size(); ++k) {
    double s = 0.0;
    for (int j : user_clusters[k]) s += w(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    if (s > best_sum) {
      best_sum = s;
      best = static_cast<int>(k);
    }
  }
  return {best, best_sum};
}

}  // namespace

UserAssignment assign_users_best(const WeightMatrix& w,
                                 const std::vector<std::vector<int>>& bs_clusters) {
  validate_weight_matrix(w);
  check_clusters(bs_clusters, w.rows(), true, "bs");
  const std::size_t m = bs_clusters.size();
  const std::size_t u = w.cols();

  UserAssignment out;
  std::vector<std::vector<int>> users_of(m);
  for (std::size_t j = 0; j < u; ++j) {
    int best = 0;
    double best_sum = -1.0;
    for (std::size_t k = 0; k < m; ++k) {
      double s = 0.0;
      for (int i : bs_clusters[k]) s += w(static_cast<std::size_t>(i), j);
      if (s > best_sum) {
        best_sum = s;
        best = static_cast<int>(k);
      }
    }
    if (best_sum == 0.0) out.zero_weight_users.push_back(static_cast<int>(j));
    users_of[static_cast<std::size_t>(best)].push_back(static_cast<int>(j));
  }
  for (std::size_t k = 0; k < m; ++k) {
    if (users_of[k].empty()) {
      ++out.clusters_discarded;
      continue;
    }
    out.partition.clusters.push_back({sorted(bs_clusters[k]), users_of[k]});
  }
  return out;
}

BsAssignment assign_bs_best(const WeightMatrix& w,
                            const std::vector<std::vector<int>>& user_clusters) {
  validate_weight_matrix(w);
  check_clusters(user_clusters, w.cols(), true, "user");
  BsAssignment out;
  out.cluster_of_bs.resize(w.rows());
  for (std::size_t i = 0; i < w.rows(); ++i) {
    auto [k, s] = best_cluster_for_bs(w, user_clusters, static_cast<int>(i));
    out.cluster_of_bs[i] = k;
    if (s == 0.0) out.zero_weight_bs.push_back(static_cast<int>(i));
  }
  return out;
}

namespace {

// Unit-capacity min-cost max-flow, successive shortest paths with Dijkstra
// over reduced costs. Small graphs only (cluster/BS scale).
class UnitFlow {
 public:
  explicit UnitFlow(int nodes) : head_(static_cast<std::size_t>(nodes), -1) {}

  void add_edge(int from, int to, double cost) {
    edges_.push_back({to, head_[static_cast<std::size_t>(from)], 1, cost});
    head_[static_cast<std::size_t>(from)] = static_cast<int>(edges_.size()) - 1;
    edges_.push_back({from, head_[static_cast<std::size_t>(to)], 0, -cost});
    head_[static_cast<std::size_t>(to)] = static_cast<int>(edges_.size()) - 1;
  }

  // Augments one unit source -> sink per round until no path remains.
  void run(int source, int sink) {
    const std::size_t n = head_.size();
    std::vector<double> potential(n, 0.0);
    while (true) {
      std::vector<double> dist(n, kInf);
      std::vector<int> parent_edge(n, -1);
      using Item = std::pair<double, int>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
      dist[static_cast<std::size_t>(source)] = 0.0;
      pq.push({0.0, source});
      while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[static_cast<std::size_t>(v)]) continue;
        for (int e = head_[static_cast<std::size_t>(v)]; e != -1; e = edges_[static_cast<std::size_t>(e)].next) {
          const Edge& ed = edges_[static_cast<std::size_t>(e)];
          if (ed.cap == 0) continue;
          double nd = d + ed.cost + potential[static_cast<std::size_t>(v)] -
                      potential[static_cast<std::size_t>(ed.to)];
          if (nd < dist[static_cast<std::size_t>(ed.to)]) {
            dist[static_cast<std::size_t>(ed.to)] = nd;
            parent_edge[static_cast<std::size_t>(ed.to)] = e;
            pq.push({nd, ed.to});
          }
        }
      }
      if (dist[static_cast<std::size_t>(sink)] == kInf) break;
      for (std::size_t v = 0; v < n; ++v)
        if (dist[v] < kInf) potential[v] += dist[v];
      for (int v = sink; v != source;) {
        int e = parent_edge[static_cast<std::size_t>(v)];
        edges_[static_cast<std::size_t>(e)].cap -= 1;
        edges_[static_cast<std::size_t>(e ^ 1)].cap += 1;
        v = edges_[static_cast<std::size_t>(e ^ 1)].to;
      }
    }
  }

  // Forward edge used iff its residual capacity is 0.
  bool used(int edge_index) const { return edges_[static_cast<std::size_t>(edge_index)].cap == 0; }

 private:
  struct Edge {
    int to;
    int next;
    int cap;
    double cost;
  };
  std::vector<int> head_;
  std::vector<Edge> edges_;
};

}  // namespace

ClusterMatching match_clusters(const WeightMatrix& w,
                               const std::vector<std::vector<int>>& user_clusters) {
  validate_weight_matrix(w);
  check_clusters(user_clusters, w.cols(), true, "user");
  const int m = static_cast<int>(user_clusters.size());
  const int b = static_cast<int>(w.rows());

  Matrix edge(static_cast<std::size_t>(m), static_cast<std::size_t>(b));
  double max_weight = 0.0;
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < b; ++i) {
      double s = 0.0;
      for (int j : user_clusters[static_cast<std::size_t>(k)])
        s += w(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      edge(static_cast<std::size_t>(k), static_cast<std::size_t>(i)) = s;
      max_weight = std::max(max_weight, s);
    }

  // source 0, clusters 1..m, BSs m+1..m+b, sink m+b+1. Costs are
  // max_weight - edge so cheapest-path augmentation maximizes total weight
  // among maximum-cardinality matchings.
  const int source = 0;
  const int sink = m + b + 1;
  UnitFlow flow(m + b + 2);
  std::vector<std::vector<std::pair<int, int>>> edge_ids(static_cast<std::size_t>(m));
  int edge_count = 0;  // add_edge stores a forward/backward pair
  auto add = [&flow, &edge_count](int from, int to, double cost) {
    flow.add_edge(from, to, cost);
    edge_count += 2;
    return edge_count - 2;
  };
  for (int k = 0; k < m; ++k) add(source, 1 + k, 0.0);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < b; ++i) {
      double s = edge(static_cast<std::size_t>(k), static_cast<std::size_t>(i));
      if (s > 0.0)
        edge_ids[static_cast<std::size_t>(k)].push_back({add(1 + k, m + 1 + i, max_weight - s), i});
    }
  for (int i = 0; i < b; ++i) add(m + 1 + i, sink, 0.0);
  flow.run(source, sink);

  ClusterMatching out;
  for (int k = 0; k < m; ++k) {
    bool matched = false;
    for (auto [eid, i] : edge_ids[static_cast<std::size_t>(k)]) {
      if (flow.used(eid)) {
        out.pairs.emplace_back(k, i);
        out.weights.push_back(edge(static_cast<std::size_t>(k), static_cast<std::size_t>(i)));
        matched = true;
        break;
      }
    }
    if (!matched) out.unmatched_clusters.push_back(k);
  }
  return out;
}

MatchingBestResult dph_matching_best(const WeightMatrix& w, int num_clusters,
                                     std::optional<int> size_cap) {
  validate_weight_matrix(w);
  if (num_clusters < 1 || num_clusters > static_cast<int>(w.cols()))
    throw std::invalid_argument("cluster count must be in [1, users]");

  DphResult dph = dph_clustering(transpose(w), num_clusters, size_cap);
  const auto& user_clusters = dph.clusters;
  const std::size_t m = user_clusters.size();

  MatchingBestResult out;
  out.reached_target = dph.reached_target;
  out.matching = match_clusters(w, user_clusters);

  std::vector<int> cluster_of(w.rows(), -1);
  for (auto [k, i] : out.matching.pairs) cluster_of[static_cast<std::size_t>(i)] = k;
  for (std::size_t i = 0; i < w.rows(); ++i) {
    if (cluster_of[i] != -1) continue;
    auto [k, s] = best_cluster_for_bs(w, user_clusters, static_cast<int>(i));
    cluster_of[i] = k;
    if (s == 0.0) out.zero_weight_bs.push_back(static_cast<int>(i));
  }

  out.partition.clusters.resize(m);
  for (std::size_t k = 0; k < m; ++k) out.partition.clusters[k].user_ids = user_clusters[k];
  for (std::size_t i = 0; i < w.rows(); ++i)
    out.partition.clusters[static_cast<std::size_t>(cluster_of[i])].bs_ids.push_back(
        static_cast<int>(i));
  return out;
}

namespace {

double cluster_term(double intra, double cut, bool has_users) {
  if (!has_users) return 0.0;
  return intra == 0.0 ? kInf : cut / intra;
}

}  // namespace

PruneResult prune_bs(const WeightMatrix& w, const Partition& p) {
  validate_weight_matrix(w);
  validate_partition(p, static_cast<int>(w.rows()), static_cast<int>(w.cols()), false);

  PruneResult out;
  out.partition = p;
  normalize(out.partition);
  auto& clusters = out.partition.clusters;
  const std::size_t b = w.rows();
  const std::size_t u = w.cols();

  std::vector<int> bs_cluster = cluster_of_bs(out.partition, static_cast<int>(b));
  std::vector<int> user_cluster = cluster_of_user(out.partition, static_cast<int>(u));
  for (int k : user_cluster)
    if (k < 0) throw std::invalid_argument("partition must cover every user");

  // BSs outside the partition are silent from the start.
  WeightMatrix wz = with_rows_zeroed(w, unassigned_bs(out.partition, static_cast<int>(b)));

  std::vector<double> intra(clusters.size()), cut(clusters.size());
  for (std::size_t k = 0; k < clusters.size(); ++k) {
    intra[k] = intra_weight(wz, clusters[k]);
    cut[k] = cut_weight(wz, clusters[k]);
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < b; ++i) {
      int ki = bs_cluster[i];
      if (ki < 0) continue;  // already switched off
      auto k = static_cast<std::size_t>(ki);
      const Cluster& c = clusters[k];

      double row_in = 0.0, row_out = 0.0;
      for (std::size_t j = 0; j < u; ++j) {
        double v = wz(i, j);
        if (user_cluster[j] == ki)
          row_in += v;
        else
          row_out += v;
      }
      double old_term = cluster_term(intra[k], cut[k], !c.user_ids.empty());
      // Removing the last BS leaves the users unserved regardless of what
      // the drifting incremental sums say.
      double new_term = !c.user_ids.empty() && c.bs_ids.size() == 1
                            ? kInf
                            : cluster_term(std::max(0.0, intra[k] - row_in),
                                           std::max(0.0, cut[k] - row_out), !c.user_ids.empty());
      if (!(new_term < old_term)) continue;

      intra[k] = std::max(0.0, intra[k] - row_in);
      cut[k] = std::max(0.0, cut[k] - row_out);
      for (std::size_t j = 0; j < u; ++j) {
        int m = user_cluster[j];
        if (m >= 0 && m != ki) cut[static_cast<std::size_t>(m)] -= wz(i, j);
        wz(i, j) = 0.0;
      }
      auto& ids = clusters[k].bs_ids;
      ids.erase(std::find(ids.begin(), ids.end(), static_cast<int>(i)));
      bs_cluster[i] = -1;
      out.switched_off.push_back(static_cast<int>(i));
      changed = true;
    }
  }
  std::sort(out.switched_off.begin(), out.switched_off.end());
  return out;
}

}  // namespace imclust
