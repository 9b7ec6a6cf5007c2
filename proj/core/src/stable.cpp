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
#include "imclust/stable.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "imclust/dph.hpp"
#include "imclust/metric.hpp"
#include "text_io.hpp"

namespace imclust {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBottom = -std::numeric_limits<double>::infinity();

void check_user_clusters(const std::vector<std::vector<int>>& clusters, std::size_t u) {
  if (clusters.empty()) throw std::invalid_argument("cluster list is empty");
  std::vector<char> seen(u, 0);
  std::size_t n = 0;
  for (const auto& c : clusters)
    for (int j : c) {
      if (j < 0 || static_cast<std::size_t>(j) >= u)
        throw std::invalid_argument("user id out of range");
      if (seen[static_cast<std::size_t>(j)]) throw std::invalid_argument("user clusters overlap");
      seen[static_cast<std::size_t>(j)] = 1;
      ++n;
    }
  if (n != u) throw std::invalid_argument("user clusters must cover every user");
}

// Least preferred member of the cluster; ties eject the highest BS id.
// Optionally restricted to non-exempt members. -1 when none qualifies.
int least_preferred(const std::vector<int>& members, const Matrix& pref_cluster,
                    std::size_t k, const std::vector<char>* exempt) {
  int worst = -1;
  double worst_pref = kInf;
  for (int i : members) {
    if (exempt && (*exempt)[static_cast<std::size_t>(i)]) continue;
    double pr = pref_cluster(k, static_cast<std::size_t>(i));
    if (worst == -1 || pr < worst_pref || (pr == worst_pref && i > worst)) {
      worst = i;
      worst_pref = pr;
    }
  }
  return worst;
}

}  // namespace

PreferenceTable build_preferences(const WeightMatrix& w,
                                  const std::vector<std::vector<int>>& user_clusters) {
  validate_weight_matrix(w);
  check_user_clusters(user_clusters, w.cols());
  const std::size_t b = w.rows();
  const std::size_t m = user_clusters.size();

  PreferenceTable t;
  t.pref_bs = Matrix(b, m);
  t.pref_cluster = Matrix(m, b);
  t.capacity.assign(m, 0.0);
  t.row_sums = row_sums(w);

  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      double s = 0.0;
      for (int j : user_clusters[k]) s += w(i, static_cast<std::size_t>(j));
      t.pref_bs(i, k) = s;
      t.pref_cluster(k, i) = s == 0.0 ? kBottom : -(t.row_sums[i] / s);
    }
  for (std::size_t k = 0; k < m; ++k) {
    double cap = 0.0;
    for (int j : user_clusters[k])
      for (std::size_t i = 0; i < b; ++i) cap += w(i, static_cast<std::size_t>(j));
    t.capacity[k] = cap;
  }
  return t;
}

StableResult stable_extend(const WeightMatrix& w,
                           const std::vector<std::vector<int>>& user_clusters,
                           const StableOptions& opts) {
  const std::size_t b = w.rows();
  const std::size_t m = user_clusters.size();

  StableResult out;
  out.prefs = build_preferences(w, user_clusters);
  const Matrix& pref_bs = out.prefs.pref_bs;
  const Matrix& pref_cluster = out.prefs.pref_cluster;

  out.degenerate = total_sum(w) == 0.0;

  std::vector<std::vector<int>> members(m);
  std::vector<double> usage(m, 0.0);
  std::vector<char> saturated(m, 0);
  std::vector<char> exempt(b, 0);
  std::vector<std::vector<char>> rejected(b, std::vector<char>(m, 0));

  auto note_usage = [&](std::size_t k) {
    if (usage[k] >= out.prefs.capacity[k])
      saturated[k] = 1;
    else if (saturated[k])
      out.usage_monotone_ok = false;
  };

  std::vector<double> floor_threshold(b, -kInf);
  if (opts.preference_floor)
    for (std::size_t i = 0; i < b; ++i) {
      double best = 0.0;
      for (std::size_t k = 0; k < m; ++k) best = std::max(best, pref_bs(i, k));
      floor_threshold[i] = 0.5 * best;
    }

  std::deque<int> queue;
  for (std::size_t i = 0; i < b; ++i) queue.push_back(static_cast<int>(i));
  std::vector<int> deferred;  // rejected by every admissible cluster

  while (!queue.empty()) {
    int i = queue.front();
    queue.pop_front();
    const auto is = static_cast<std::size_t>(i);

    int target = -1;
    double target_pref = -kInf;
    for (std::size_t k = 0; k < m; ++k) {
      if (rejected[is][k]) continue;
      double pr = pref_bs(is, k);
      if (opts.preference_floor && pr < floor_threshold[is]) continue;
      if (pr > target_pref) {
        target_pref = pr;
        target = static_cast<int>(k);
      }
    }
    if (target == -1) {
      deferred.push_back(i);
      continue;
    }

    ++out.proposals;
    const auto k = static_cast<std::size_t>(target);
    members[k].push_back(i);
    usage[k] += out.prefs.row_sums[is];
    note_usage(k);

    while (!members[k].empty()) {
      int beta = least_preferred(members[k], pref_cluster, k, &exempt);
      if (beta == -1) break;  // every member is ejection-exempt
      if (!(usage[k] - out.prefs.row_sums[static_cast<std::size_t>(beta)] >=
            out.prefs.capacity[k]))
        break;
      members[k].erase(std::find(members[k].begin(), members[k].end(), beta));
      usage[k] -= out.prefs.row_sums[static_cast<std::size_t>(beta)];
      rejected[static_cast<std::size_t>(beta)][k] = 1;
      queue.push_back(beta);
      note_usage(k);
    }
  }

  // A BS rejected by every cluster it may propose to joins its most
  // preferred cluster outright, with no further ejections.
  for (int i : deferred) {
    const auto is = static_cast<std::size_t>(i);
    std::size_t best = 0;
    for (std::size_t k = 1; k < m; ++k)
      if (pref_bs(is, k) > pref_bs(is, best)) best = k;
    members[best].push_back(i);
    usage[best] += out.prefs.row_sums[is];
    exempt[is] = 1;
    out.fallback_bs.push_back(i);
    note_usage(best);
  }

  out.partition.clusters.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    std::sort(members[k].begin(), members[k].end());
    out.partition.clusters[k].bs_ids = std::move(members[k]);
    out.partition.clusters[k].user_ids = user_clusters[k];
  }
  return out;
}

StableResult stable_clustering(const WeightMatrix& w, int num_clusters,
                               const StableOptions& opts) {
  validate_weight_matrix(w);
  if (num_clusters < 1 || num_clusters > static_cast<int>(w.cols()))
    throw std::invalid_argument("cluster count must be in [1, users]");
  DphResult dph = dph_clustering(transpose(w), num_clusters, opts.size_cap);
  StableResult out = stable_extend(w, dph.clusters, opts);
  out.reached_target = dph.reached_target;
  return out;
}

StabilityReport verify_stable(const WeightMatrix& w, const Partition& p,
                              const PreferenceTable& prefs) {
  const std::size_t m = p.clusters.size();
  if (prefs.pref_cluster.rows() != m || prefs.row_sums.size() != w.rows())
    throw std::invalid_argument("preference table does not match the partition");

  StabilityReport report;
  for (std::size_t k = 0; k < m; ++k) {
    const auto& members = p.clusters[k].bs_ids;
    if (members.empty()) continue;
    double usage = 0.0;
    for (int i : members) usage += prefs.row_sums[static_cast<std::size_t>(i)];
    int beta = least_preferred(members, prefs.pref_cluster, k, nullptr);
    if (usage - prefs.row_sums[static_cast<std::size_t>(beta)] >= prefs.capacity[k]) {
      report.saturation_ok = false;
      report.saturation_violations.push_back(static_cast<int>(k));
    }
  }

  for (std::size_t k = 0; k < m; ++k)
    for (int beta : p.clusters[k].bs_ids) {
      const auto bi = static_cast<std::size_t>(beta);
      for (std::size_t other = 0; other < m; ++other) {
        if (other == k) continue;
        if (!(prefs.pref_bs(bi, other) > prefs.pref_bs(bi, k))) continue;
        for (int gamma : p.clusters[other].bs_ids)
          if (prefs.pref_cluster(other, bi) >
              prefs.pref_cluster(other, static_cast<std::size_t>(gamma)))
            report.blocking_pairs.push_back({beta, static_cast<int>(other), gamma});
      }
    }
  return report;
}

std::vector<EpsilonClusterReport> epsilon_bound_check(const WeightMatrix& w,
                                                      const Partition& p,
                                                      const PreferenceTable& prefs) {
  std::vector<EpsilonClusterReport> reports;
  auto loads = capacity_usage(w, p);
  for (std::size_t k = 0; k < p.clusters.size(); ++k) {
    EpsilonClusterReport r;
    r.cluster = static_cast<int>(k);
    r.usage = loads[k].usage;
    r.capacity = loads[k].capacity;
    if (r.usage == 0.0) {
      r.skipped = true;
      reports.push_back(r);
      continue;
    }
    r.epsilon = std::max(0.0, r.capacity / r.usage - 1.0);
    double worst = kInf;
    for (int i : p.clusters[k].bs_ids)
      worst = std::min(worst, prefs.pref_cluster(k, static_cast<std::size_t>(i)));
    r.c_k = -worst;  // +inf when some member has the bottom preference
    double intra = intra_weight(w, p.clusters[k]);
    r.term = intra == 0.0 ? kInf : cut_weight(w, p.clusters[k]) / intra;
    r.bound = (2.0 + r.epsilon) * r.c_k - 2.0;
    r.ok = r.term <= r.bound ||
           (r.term - r.bound) <= 1e-9 * std::max(1.0, std::abs(r.bound));
    reports.push_back(r);
  }
  return reports;
}

void write_epsilon_report_csv(std::ostream& out,
                              const std::vector<EpsilonClusterReport>& reports) {
  using detail::format_double;
  out << "cluster,usage,capacity,epsilon,c_k,term,bound\n";
  for (const auto& r : reports)
    out << r.cluster << "," << format_double(r.usage) << "," << format_double(r.capacity)
        << "," << format_double(r.epsilon) << "," << format_double(r.c_k) << ","
        << format_double(r.term) << "," << format_double(r.bound) << "\n";
}

}  // namespace imclust
