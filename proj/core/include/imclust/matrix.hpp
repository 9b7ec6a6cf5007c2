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

#include <cstddef>
#include <vector>

namespace imclust {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  const std::vector<double>& data() const { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Interference weights: rows are BSs, columns are users. Entries are
// non-negative and finite.
using WeightMatrix = Matrix;

Matrix transpose(const Matrix& m);

// Sums accumulate in index-ascending order (reproducible across runs).
std::vector<double> row_sums(const Matrix& m);
std::vector<double> col_sums(const Matrix& m);
double total_sum(const Matrix& m);

// Copy of m with the given rows set to zero.
Matrix with_rows_zeroed(const Matrix& m, const std::vector<int>& rows);

// Throws std::invalid_argument if m is empty or has a negative or
// non-finite entry.
void validate_weight_matrix(const WeightMatrix& m);

}  // namespace imclust
