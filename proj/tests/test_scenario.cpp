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

#include "imclust/scenario.hpp"

using namespace imclust;

TEST_CASE("generate_scenario places points uniformly in the square") {
  Scenario s = generate_scenario(100, 50, 1000.0, 8);
  CHECK(s.bs_positions.size() == 100);
  CHECK(s.user_positions.size() == 50);
  for (const auto& pts : {s.bs_positions, s.user_positions})
    for (const Point& p : pts) {
      CHECK(p.x >= 0.0);
      CHECK(p.x <= 1000.0);
      CHECK(p.y >= 0.0);
      CHECK(p.y <= 1000.0);
    }
}

TEST_CASE("generate_scenario rejects degenerate inputs") {
  CHECK_THROWS_AS(generate_scenario(0, 5, 1000.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_scenario(5, 0, 1000.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_scenario(1, 1, 0.0, 1), std::invalid_argument);
}

TEST_CASE("generate_scenario is deterministic per seed, bitwise") {
  Scenario a = generate_scenario(40, 30, 1000.0, 1234);
  Scenario b = generate_scenario(40, 30, 1000.0, 1234);
  CHECK(a.bs_positions == b.bs_positions);
  CHECK(a.user_positions == b.user_positions);
  Scenario c = generate_scenario(40, 30, 1000.0, 1235);
  CHECK(a.bs_positions != c.bs_positions);
}

TEST_CASE("path_loss_weight branch structure") {
  // below dist_min: clamped
  CHECK(path_loss_weight({0, 0}, {0.5, 0}, 4.0, 1.0, 200.0) == 1.0);
  // power law in the middle band
  CHECK(path_loss_weight({0, 0}, {10, 0}, 4.0, 1.0, 200.0) == doctest::Approx(1e-4).epsilon(1e-12));
  // beyond the cutoff
  CHECK(path_loss_weight({0, 0}, {250, 0}, 4.0, 1.0, 200.0) == 0.0);
  // boundary cases land in the clamped / inner branch
  CHECK(path_loss_weight({0, 0}, {1, 0}, 4.0, 1.0, 200.0) == 1.0);
  CHECK(path_loss_weight({0, 0}, {200, 0}, 4.0, 1.0, 200.0) ==
        doctest::Approx(std::pow(200.0, -4.0)));
}

TEST_CASE("build_weight_matrix evaluates the power law entrywise") {
  Scenario s;
  s.bs_positions = {{0, 0}};
  s.user_positions = {{0, 10}};
  WeightMatrix w = build_weight_matrix(s);
  CHECK(w.rows() == 1);
  CHECK(w.cols() == 1);
  CHECK(w(0, 0) == doctest::Approx(1e-4).epsilon(1e-12));

  s.user_positions = {{0, 500}};  // beyond dist_max
  CHECK(build_weight_matrix(s)(0, 0) == 0.0);
}

TEST_CASE("build_weight_matrix shape and bounds") {
  Scenario s = generate_scenario(2, 3, 1000.0, 7);
  WeightMatrix w = build_weight_matrix(s);
  CHECK(w.rows() == 2);
  CHECK(w.cols() == 3);
  const double peak = std::pow(s.dist_min, -s.alpha);
  for (double v : w.data()) {
    CHECK(v >= 0.0);
    CHECK(v <= peak);
  }
}

TEST_CASE("swapping two users permutes the corresponding columns only") {
  Scenario s = generate_scenario(6, 5, 1000.0, 99);
  WeightMatrix before = build_weight_matrix(s);
  std::swap(s.user_positions[1], s.user_positions[3]);
  WeightMatrix after = build_weight_matrix(s);
  for (std::size_t i = 0; i < before.rows(); ++i)
    for (std::size_t j = 0; j < before.cols(); ++j) {
      std::size_t expected = j == 1 ? 3 : j == 3 ? 1 : j;
      CHECK(after(i, j) == before(i, expected));
    }
}

TEST_CASE("scenario text round-trips bitwise") {
  Scenario s = generate_scenario(12, 9, 1000.0, 42);
  s.alpha = 3.5;
  std::ostringstream out;
  write_scenario(out, s);
  std::istringstream in(out.str());
  Scenario back = read_scenario(in);
  CHECK(back.bs_positions == s.bs_positions);
  CHECK(back.user_positions == s.user_positions);
  CHECK(back.side_length == s.side_length);
  CHECK(back.alpha == s.alpha);
  CHECK(back.dist_min == s.dist_min);
  CHECK(back.dist_max == s.dist_max);
  CHECK(back.seed == s.seed);
  CHECK(build_weight_matrix(back) == build_weight_matrix(s));
}
