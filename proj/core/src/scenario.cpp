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
#include "imclust/scenario.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "text_io.hpp"

namespace imclust {

namespace {

// Uniform double in [0, 1) from the top 53 bits of the generator output.
// uniform_real_distribution is implementation-defined, so it is not used.
double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void validate_params(double side_length, double alpha, double dist_min, double dist_max) {
  if (!(side_length > 0.0)) throw std::invalid_argument("side_length must be > 0");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  if (!(dist_min > 0.0) || !(dist_min < dist_max))
    throw std::invalid_argument("need 0 < dist_min < dist_max");
}

}  // namespace

Scenario generate_scenario(int num_bs, int num_users, double side_length,
                           std::uint64_t seed) {
  if (num_bs < 1 || num_users < 1)
    throw std::invalid_argument("need at least one BS and one user");
  if (!(side_length > 0.0)) throw std::invalid_argument("side_length must be > 0");

  Scenario s;
  s.side_length = side_length;
  s.seed = seed;
  std::mt19937_64 rng(seed);
  s.bs_positions.reserve(static_cast<std::size_t>(num_bs));
  for (int i = 0; i < num_bs; ++i) {
    double x = next_unit(rng) * side_length;
    double y = next_unit(rng) * side_length;
    s.bs_positions.push_back({x, y});
  }
  s.user_positions.reserve(static_cast<std::size_t>(num_users));
  for (int j = 0; j < num_users; ++j) {
    double x = next_unit(rng) * side_length;
    double y = next_unit(rng) * side_length;
    s.user_positions.push_back({x, y});
  }
  return s;
}

double path_loss_weight(Point p, Point q, double alpha, double dist_min,
                        double dist_max) {
  double dx = p.x - q.x;
  double dy = p.y - q.y;
  double dist = std::sqrt(dx * dx + dy * dy);
  if (dist > dist_max) return 0.0;
  if (dist <= dist_min) return std::pow(dist_min, -alpha);
  return std::pow(dist, -alpha);
}

WeightMatrix build_weight_matrix(const Scenario& s) {
  if (s.bs_positions.empty() || s.user_positions.empty())
    throw std::invalid_argument("scenario has no BSs or no users");
  validate_params(s.side_length, s.alpha, s.dist_min, s.dist_max);
  for (const auto& pts : {&s.bs_positions, &s.user_positions})
    for (const Point& p : *pts)
      if (!(p.x >= 0.0 && p.x <= s.side_length && p.y >= 0.0 && p.y <= s.side_length))
        throw std::invalid_argument("scenario point outside the square");

  WeightMatrix w(s.bs_positions.size(), s.user_positions.size());
  for (std::size_t i = 0; i < s.bs_positions.size(); ++i)
    for (std::size_t j = 0; j < s.user_positions.size(); ++j)
      w(i, j) = path_loss_weight(s.bs_positions[i], s.user_positions[j],
                                 s.alpha, s.dist_min, s.dist_max);
  return w;
}

void write_scenario(std::ostream& out, const Scenario& s) {
  using detail::format_double;
  out << "# imclust scenario\n";
  out << "side_length " << format_double(s.side_length) << "\n";
  out << "alpha " << format_double(s.alpha) << "\n";
  out << "dist_min " << format_double(s.dist_min) << "\n";
  out << "dist_max " << format_double(s.dist_max) << "\n";
  out << "seed " << s.seed << "\n";
  for (const Point& p : s.bs_positions)
    out << "bs " << format_double(p.x) << " " << format_double(p.y) << "\n";
  for (const Point& p : s.user_positions)
    out << "user " << format_double(p.x) << " " << format_double(p.y) << "\n";
}

Scenario read_scenario(std::istream& in) {
  Scenario s;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view sv = detail::trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    std::istringstream ls{std::string(sv)};
    std::string key, a, b;
    ls >> key >> a;
    if (key == "bs" || key == "user") {
      ls >> b;
      if (a.empty() || b.empty()) throw std::invalid_argument("malformed point line: " + line);
      Point p{detail::parse_double(a), detail::parse_double(b)};
      (key == "bs" ? s.bs_positions : s.user_positions).push_back(p);
    } else if (key == "side_length") {
      s.side_length = detail::parse_double(a);
    } else if (key == "alpha") {
      s.alpha = detail::parse_double(a);
    } else if (key == "dist_min") {
      s.dist_min = detail::parse_double(a);
    } else if (key == "dist_max") {
      s.dist_max = detail::parse_double(a);
    } else if (key == "seed") {
      s.seed = detail::parse_int<std::uint64_t>(a);
    } else {
      throw std::invalid_argument("unknown scenario line: " + line);
    }
  }
  return s;
}

}  // namespace imclust
