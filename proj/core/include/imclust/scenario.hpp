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
#include <iosfwd>
#include <vector>

#include "imclust/matrix.hpp"

namespace imclust {

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

// Random BS/user placement on a square, plus the distance power-law
// parameters that turn it into a weight matrix.
struct Scenario {
  std::vector<Point> bs_positions;
  std::vector<Point> user_positions;
  double side_length = 1000.0;
  double alpha = 4.0;     // path-loss exponent
  double dist_min = 1.0;  // weight clamps at dist_min^-alpha below this
  double dist_max = 200.0;  // weight 0 beyond this
  std::uint64_t seed = 0;
};

// Places num_bs + num_users points i.i.d. uniformly on [0, side_length]^2.
// The stream is mt19937_64(seed); doubles are drawn as (rng() >> 11) * 2^-53
// so runs are reproducible bit-for-bit across platforms. Draw order: x then y
// for each BS in id order, then x then y for each user.
Scenario generate_scenario(int num_bs, int num_users, double side_length,
                           std::uint64_t seed);

// dist <= dist_min        -> dist_min^-alpha
// dist_min < dist <= dist_max -> dist^-alpha
// dist > dist_max         -> 0
double path_loss_weight(Point p, Point q, double alpha, double dist_min,
                        double dist_max);

// b x u matrix with entry (i, j) = path_loss_weight(bs_i, user_j, ...).
WeightMatrix build_weight_matrix(const Scenario& s);

// Flat text record: parameter lines, then one point per line (kind, x, y).
// Coordinates are written shortest-round-trip, so read(write(s)) == s bitwise.
void write_scenario(std::ostream& out, const Scenario& s);
Scenario read_scenario(std::istream& in);

}  // namespace imclust
