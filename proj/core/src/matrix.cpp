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
#include "imclust/matrix.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace imclust {

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

std::vector<double> row_sums(const Matrix& m) {
  std::vector<double> s(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double acc = 0.0;
    const double* r = m.row(i);
    for (std::size_t j = 0; j < m.cols(); ++j) acc += r[j];
    s[i] = acc;
  }
  return s;
}

std::vector<double> col_sums(const Matrix& m) {
  std::vector<double> s(m.cols(), 0.0);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) acc += m(i, j);
    s[j] = acc;
  }
  return s;
}

double total_sum(const Matrix& m) {
  double acc = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double* r = m.row(i);
    for (std::size_t j = 0; j < m.cols(); ++j) acc += r[j];
  }
  return acc;
}

Matrix with_rows_zeroed(const Matrix& m, const std::vector<int>& rows) {
  Matrix out = m;
  for (int i : rows) {
    if (i < 0 || static_cast<std::size_t>(i) >= m.rows())
      throw std::invalid_argument("with_rows_zeroed: row id out of range");
    std::memset(out.row(static_cast<std::size_t>(i)), 0, m.cols() * sizeof(double));
  }
  return out;
}

void validate_weight_matrix(const WeightMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0)
    throw std::invalid_argument("weight matrix must be non-empty");
  for (double v : m.data())
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("weight matrix entries must be non-negative and finite");
}

}  // namespace imclust
