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
#include "imclust/baseline.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

namespace imclust {

namespace {

// k-means on the rows of points, restarts included. Empty clusters steal the
// point farthest from its center. Deterministic for a given engine state.
std::vector<int> kmeans(const Eigen::MatrixXd& points, int k, int restarts,
                        int max_iters, std::mt19937_64& rng) {
  const auto n = static_cast<int>(points.rows());
  std::vector<int> best_labels(static_cast<std::size_t>(n), 0);
  double best_inertia = std::numeric_limits<double>::infinity();

  for (int r = 0; r < restarts; ++r) {
    // Distinct random rows as initial centers (Fisher-Yates prefix).
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < k; ++i) {
      auto j = static_cast<int>(rng() % static_cast<std::uint64_t>(n - i)) + i;
      std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
    }
    Eigen::MatrixXd centers(k, points.cols());
    for (int c = 0; c < k; ++c) centers.row(c) = points.row(order[static_cast<std::size_t>(c)]);

    std::vector<int> labels(static_cast<std::size_t>(n), 0);
    for (int iter = 0; iter < max_iters; ++iter) {
      bool moved = false;
      std::vector<double> point_dist(static_cast<std::size_t>(n), 0.0);
      for (int i = 0; i < n; ++i) {
        int best = 0;
        double best_d = (points.row(i) - centers.row(0)).squaredNorm();
        for (int c = 1; c < k; ++c) {
          double d = (points.row(i) - centers.row(c)).squaredNorm();
          if (d < best_d) {
            best_d = d;
            best = c;
          }
        }
        point_dist[static_cast<std::size_t>(i)] = best_d;
        if (labels[static_cast<std::size_t>(i)] != best) {
          labels[static_cast<std::size_t>(i)] = best;
          moved = true;
        }
      }
      std::vector<int> count(static_cast<std::size_t>(k), 0);
      for (int i = 0; i < n; ++i) ++count[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])];
      for (int c = 0; c < k; ++c) {
        if (count[static_cast<std::size_t>(c)] > 0) continue;
        // farthest point overall becomes the empty cluster's center
        int far = 0;
        for (int i = 1; i < n; ++i)
          if (point_dist[static_cast<std::size_t>(i)] > point_dist[static_cast<std::size_t>(far)]) far = i;
        labels[static_cast<std::size_t>(far)] = c;
        point_dist[static_cast<std::size_t>(far)] = 0.0;
        count[static_cast<std::size_t>(c)] = 1;
        moved = true;
      }
      centers.setZero();
      for (int i = 0; i < n; ++i) centers.row(labels[static_cast<std::size_t>(i)]) += points.row(i);
      for (int c = 0; c < k; ++c) {
        int cnt = 0;
        for (int i = 0; i < n; ++i)
          if (labels[static_cast<std::size_t>(i)] == c) ++cnt;
        if (cnt > 0) centers.row(c) /= static_cast<double>(cnt);
      }
      if (!moved) break;
    }
    double inertia = 0.0;
    for (int i = 0; i < n; ++i)
      inertia += (points.row(i) - centers.row(labels[static_cast<std::size_t>(i)])).squaredNorm();
    if (inertia < best_inertia) {
      best_inertia = inertia;
      best_labels = labels;
    }
  }
  return best_labels;
}

}  // namespace

Partition spectral_clustering(const WeightMatrix& w, const SpectralConfig& cfg) {
  validate_weight_matrix(w);
  if (cfg.num_clusters < 1) throw std::invalid_argument("num_clusters must be >= 1");
  if (cfg.kmeans_restarts < 1) throw std::invalid_argument("kmeans_restarts must be >= 1");
  const auto b = static_cast<int>(w.rows());
  const auto u = static_cast<int>(w.cols());
  const int n = b + u;
  const int m = cfg.num_clusters;
  if (m > n) throw std::invalid_argument("num_clusters exceeds vertex count");
  if (total_sum(w) == 0.0) throw DegenerateInputError("all-zero weight matrix");

  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < b; ++i)
    for (int j = 0; j < u; ++j) {
      adj(i, b + j) = w(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      adj(b + j, i) = adj(i, b + j);
    }

  Eigen::VectorXd degree = adj.rowwise().sum();
  for (int v = 0; v < n; ++v)
    if (degree(v) == 0.0) degree(v) = 1.0;  // isolated vertex regularization
  Eigen::VectorXd inv_sqrt = degree.array().rsqrt();

  Eigen::MatrixXd lap = Eigen::MatrixXd::Identity(n, n) -
                        inv_sqrt.asDiagonal() * adj * inv_sqrt.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  if (solver.info() != Eigen::Success)
    throw DegenerateInputError("eigendecomposition failed");

  Eigen::MatrixXd embedding = solver.eigenvectors().leftCols(m);
  for (int v = 0; v < n; ++v) {
    double norm = embedding.row(v).norm();
    if (norm > 0.0) embedding.row(v) /= norm;
  }

  std::mt19937_64 rng(cfg.seed);
  std::vector<int> labels =
      kmeans(embedding, m, cfg.kmeans_restarts, cfg.kmeans_max_iters, rng);

  Partition p;
  p.clusters.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < b; ++i)
    p.clusters[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])].bs_ids.push_back(i);
  for (int j = 0; j < u; ++j)
    p.clusters[static_cast<std::size_t>(labels[static_cast<std::size_t>(b + j)])].user_ids.push_back(j);

  // Move a BS into each user-only cluster when one can be spared: highest
  // affinity first, only from clusters that keep at least one BS.
  for (std::size_t k = 0; k < p.clusters.size(); ++k) {
    Cluster& c = p.clusters[k];
    if (!c.user_ids.empty() && c.bs_ids.empty()) {
      int best_bs = -1;
      double best_affinity = 0.0;
      for (std::size_t other = 0; other < p.clusters.size(); ++other) {
        if (other == k || p.clusters[other].bs_ids.size() < 2) continue;
        for (int i : p.clusters[other].bs_ids) {
          double s = 0.0;
          for (int j : c.user_ids) s += w(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
          if (s > best_affinity) {
            best_affinity = s;
            best_bs = i;
          }
        }
      }
      if (best_bs != -1) {
        for (auto& other : p.clusters) {
          auto it = std::find(other.bs_ids.begin(), other.bs_ids.end(), best_bs);
          if (it != other.bs_ids.end()) {
            other.bs_ids.erase(it);
            break;
          }
        }
        c.bs_ids.push_back(best_bs);
      }
    }
  }

  std::erase_if(p.clusters,
                [](const Cluster& c) { return c.bs_ids.empty() && c.user_ids.empty(); });
  normalize(p);
  return p;
}

}  // namespace imclust
