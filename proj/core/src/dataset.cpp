/*
 * Copyright 2026 The ERI-Bench Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "eri/dataset.hpp"

#include "eri/error.hpp"

namespace eri {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  require_size(data_.size(), rows * cols, "matrix data");
}

std::vector<double> Matrix::column(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void Matrix::set_column(std::size_t c, std::span<const double> values) {
  require_size(values.size(), rows_, "matrix column");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
}

void Dataset::validate() const { require_size(y.size(), x.rows(), "dataset targets"); }

Dataset Dataset::slice(std::size_t begin, std::size_t end) const {
  if (begin > end || end > size()) throw DomainError("dataset slice out of range");
  Matrix xs(end - begin, features());
  for (std::size_t r = begin; r < end; ++r) {
    const auto src = x.row(r);
    std::copy(src.begin(), src.end(), xs.row(r - begin).begin());
  }
  return Dataset{std::move(xs), std::vector<double>(y.begin() + begin, y.begin() + end)};
}

}  // namespace eri
