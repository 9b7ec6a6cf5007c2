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
#include "imclust/partition.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "text_io.hpp"

namespace imclust {

void normalize(Partition& p) {
  for (Cluster& c : p.clusters) {
    std::sort(c.bs_ids.begin(), c.bs_ids.end());
    std::sort(c.user_ids.begin(), c.user_ids.end());
  }
}

namespace {

std::vector<int> assignment(const std::vector<Cluster>& clusters, int count, bool bs) {
  std::vector<int> of(static_cast<std::size_t>(count), -1);
  for (std::size_t k = 0; k < clusters.size(); ++k) {
    const auto& ids = bs ? clusters[k].bs_ids : clusters[k].user_ids;
    for (int id : ids) {
      if (id < 0 || id >= count) throw std::invalid_argument("partition id out of range");
      if (of[static_cast<std::size_t>(id)] != -1)
        throw std::invalid_argument("partition clusters overlap");
      of[static_cast<std::size_t>(id)] = static_cast<int>(k);
    }
  }
  return of;
}

}  // namespace

void validate_partition(const Partition& p, int num_bs, int num_users,
                        bool require_total) {
  for (const Cluster& c : p.clusters)
    if (c.bs_ids.empty() && c.user_ids.empty())
      throw std::invalid_argument("empty cluster in partition");
  auto bs_of = assignment(p.clusters, num_bs, true);
  auto user_of = assignment(p.clusters, num_users, false);
  if (require_total) {
    for (int v : bs_of)
      if (v == -1) throw std::invalid_argument("partition does not cover every BS");
    for (int v : user_of)
      if (v == -1) throw std::invalid_argument("partition does not cover every user");
  }
}

std::vector<int> cluster_of_bs(const Partition& p, int num_bs) {
  return assignment(p.clusters, num_bs, true);
}

std::vector<int> cluster_of_user(const Partition& p, int num_users) {
  return assignment(p.clusters, num_users, false);
}

std::vector<int> unassigned_bs(const Partition& p, int num_bs) {
  auto of = cluster_of_bs(p, num_bs);
  std::vector<int> missing;
  for (int i = 0; i < num_bs; ++i)
    if (of[static_cast<std::size_t>(i)] == -1) missing.push_back(i);
  return missing;
}

void write_partition_csv(std::ostream& out, const Partition& p) {
  out << "kind,id,cluster\n";
  std::vector<std::pair<int, int>> rows;  // (id, cluster)
  for (int pass = 0; pass < 2; ++pass) {
    rows.clear();
    for (std::size_t k = 0; k < p.clusters.size(); ++k) {
      const auto& ids = pass == 0 ? p.clusters[k].bs_ids : p.clusters[k].user_ids;
      for (int id : ids) rows.emplace_back(id, static_cast<int>(k));
    }
    std::sort(rows.begin(), rows.end());
    for (auto [id, k] : rows)
      out << (pass == 0 ? "bs" : "user") << "," << id << "," << k << "\n";
  }
}

Partition read_partition_csv(std::istream& in) {
  Partition p;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::string_view sv = detail::trim(line);
    if (sv.empty()) continue;
    if (first && sv.rfind("kind,", 0) == 0) {
      first = false;
      continue;
    }
    first = false;
    std::istringstream ls{std::string(sv)};
    std::string kind, id, cluster;
    std::getline(ls, kind, ',');
    std::getline(ls, id, ',');
    std::getline(ls, cluster, ',');
    int v = detail::parse_int<int>(detail::trim(id));
    int k = detail::parse_int<int>(detail::trim(cluster));
    if (k < 0) throw std::invalid_argument("negative cluster id");
    if (static_cast<std::size_t>(k) >= p.clusters.size())
      p.clusters.resize(static_cast<std::size_t>(k) + 1);
    if (kind == "bs")
      p.clusters[static_cast<std::size_t>(k)].bs_ids.push_back(v);
    else if (kind == "user")
      p.clusters[static_cast<std::size_t>(k)].user_ids.push_back(v);
    else
      throw std::invalid_argument("unknown vertex kind: " + kind);
  }
  normalize(p);
  return p;
}

}  // namespace imclust
