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
#include "imclust/dph.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "text_io.hpp"

namespace imclust {

Matrix dot_matrix(const Matrix& w) {
  const std::size_t b = w.rows();
  const std::size_t u = w.cols();
  Matrix d(b, b);
  for (std::size_t i = 0; i < b; ++i) {
    const double* ri = w.row(i);
    for (std::size_t j = i; j < b; ++j) {
      const double* rj = w.row(j);
      double acc = 0.0;
      for (std::size_t k = 0; k < u; ++k) acc += ri[k] * rj[k];
      d(i, j) = acc;
      d(j, i) = acc;
    }
  }
  return d;
}

MergeState::MergeState(Matrix dot, std::optional<int> size_cap)
    : dot_(std::move(dot)), size_cap_(size_cap) {
  if (dot_.rows() != dot_.cols() || dot_.rows() == 0)
    throw std::invalid_argument("dot matrix must be square and non-empty");
  if (size_cap_ && *size_cap_ < 1) throw std::invalid_argument("size cap must be >= 1");
  const int n = static_cast<int>(dot_.rows());
  active_.assign(static_cast<std::size_t>(n), 1);
  active_ids_.resize(static_cast<std::size_t>(n));
  members_.resize(static_cast<std::size_t>(n));
  version_.assign(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    active_ids_[static_cast<std::size_t>(i)] = i;
    members_[static_cast<std::size_t>(i)] = {i};
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) push_pair(i, j);
}

bool MergeState::is_active(int id) const {
  return id >= 0 && id < size() && active_[static_cast<std::size_t>(id)];
}

const std::vector<int>& MergeState::members(int id) const {
  if (!is_active(id)) throw std::invalid_argument("cluster id not active");
  return members_[static_cast<std::size_t>(id)];
}

double MergeState::dot(int k, int m) const {
  if (!is_active(k) || !is_active(m)) throw std::invalid_argument("cluster id not active");
  return dot_(static_cast<std::size_t>(k), static_cast<std::size_t>(m));
}

double MergeState::rho(int k, int m) const {
  double dkk = dot(k, k);
  double dmm = dot(m, m);
  if (dkk == 0.0 || dmm == 0.0) return 0.0;
  return dot(k, m) / std::sqrt(dkk * dmm);
}

bool MergeState::admissible(int k, int m) const {
  if (!size_cap_) return true;
  return members_[static_cast<std::size_t>(k)].size() +
             members_[static_cast<std::size_t>(m)].size() <=
         static_cast<std::size_t>(*size_cap_);
}

void MergeState::push_pair(int k, int m) {
  if (!admissible(k, m)) return;
  int lo = std::min(k, m);
  int hi = std::max(k, m);
  heap_.push({rho(lo, hi), lo, hi, version_[static_cast<std::size_t>(lo)],
              version_[static_cast<std::size_t>(hi)]});
}

std::optional<MergeState::Candidate> MergeState::pop_best_pair() {
  while (!heap_.empty()) {
    HeapEntry e = heap_.top();
    heap_.pop();
    if (active_[static_cast<std::size_t>(e.lo)] && active_[static_cast<std::size_t>(e.hi)] &&
        version_[static_cast<std::size_t>(e.lo)] == e.ver_lo &&
        version_[static_cast<std::size_t>(e.hi)] == e.ver_hi)
      return Candidate{e.lo, e.hi, e.rho};
  }
  return std::nullopt;
}

void MergeState::merge(int k, int m) {
  if (!is_active(k) || !is_active(m) || k == m)
    throw std::invalid_argument("merge needs two distinct active clusters");
  const std::size_t lo = static_cast<std::size_t>(std::min(k, m));
  const std::size_t hi = static_cast<std::size_t>(std::max(k, m));

  const double diag = dot_(lo, lo) + 2.0 * dot_(lo, hi) + dot_(hi, hi);
  for (int x : active_ids_) {
    const auto xs = static_cast<std::size_t>(x);
    if (xs == lo || xs == hi) continue;
    const double v = dot_(lo, xs) + dot_(hi, xs);
    dot_(lo, xs) = v;
    dot_(xs, lo) = v;
  }
  dot_(lo, lo) = diag;

  auto& dst = members_[lo];
  auto& src = members_[hi];
  std::vector<int> merged;
  merged.reserve(dst.size() + src.size());
  std::merge(dst.begin(), dst.end(), src.begin(), src.end(), std::back_inserter(merged));
  dst = std::move(merged);
  src.clear();

  active_[hi] = 0;
  active_ids_.erase(std::find(active_ids_.begin(), active_ids_.end(), static_cast<int>(hi)));
  ++version_[lo];
  ++version_[hi];

  for (int x : active_ids_)
    if (x != static_cast<int>(lo)) push_pair(static_cast<int>(lo), x);
}

DphResult dph_clustering(const WeightMatrix& w, int num_clusters,
                         std::optional<int> size_cap) {
  validate_weight_matrix(w);
  const int b = static_cast<int>(w.rows());
  if (num_clusters < 1 || num_clusters > b)
    throw std::invalid_argument("cluster count must be in [1, rows]");
  if (size_cap) {
    if (*size_cap < 1) throw std::invalid_argument("size cap must be >= 1");
    if (static_cast<long long>(*size_cap) * num_clusters < b)
      throw std::invalid_argument("size cap times cluster count cannot cover all rows");
  }

  MergeState state(dot_matrix(w), size_cap);
  DphResult result;
  int round = 0;
  while (state.active_count() > num_clusters) {
    auto best = state.pop_best_pair();
    if (!best) {
      result.reached_target = false;
      break;
    }
    result.trace.push_back({round, state.members(best->lo), state.members(best->hi), best->rho});
    state.merge(best->lo, best->hi);
    ++round;
  }
  for (int id : state.active_ids()) result.clusters.push_back(state.members(id));
  return result;
}

void write_merge_trace_csv(std::ostream& out, const std::vector<MergeRecord>& trace) {
  out << "round,cluster_a_members,cluster_b_members,rho\n";
  for (const MergeRecord& r : trace) {
    out << r.round << ",";
    for (std::size_t i = 0; i < r.cluster_a.size(); ++i)
      out << (i ? ";" : "") << r.cluster_a[i];
    out << ",";
    for (std::size_t i = 0; i < r.cluster_b.size(); ++i)
      out << (i ? ";" : "") << r.cluster_b[i];
    out << "," << detail::format_double(r.rho) << "\n";
  }
}

}  // namespace imclust
