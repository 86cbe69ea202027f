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

#include "eri/bench/synthetic.hpp"

#include <cmath>

#include "eri/error.hpp"
#include "eri/rng.hpp"

namespace eri::bench {
namespace {

// Row r draws from its own stream so any prefix of the data is stable in n.
Rng row_rng(std::uint64_t seed, std::uint64_t salt, std::size_t r) {
  return Rng(mix_seed(seed, salt), StreamTag::kData, r);
}

void require_rows(std::size_t n) {
  if (n == 0) throw DomainError("synthetic task needs n >= 1");
}

}  // namespace

Dataset redundancy_sweep(std::size_t d, double alpha, std::size_t n, std::uint64_t seed) {
  require_rows(n);
  if (d < 2) throw DomainError("redundancy sweep needs d >= 2");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
  Dataset data{Matrix(n, d), std::vector<double>(n)};
  const double s = std::sqrt(1.0 - alpha * alpha);
  for (std::size_t r = 0; r < n; ++r) {
    Rng rng = row_rng(seed, 1, r);
    auto row = data.x.row(r);
    for (std::size_t k = 0; k < d; ++k) row[k] = rng.normal();
    const double z = rng.normal();
    const double eps = rng.normal();
    row[1] = alpha * row[0] + s * z;
    data.y[r] = row[0] + row[1] + 0.5 * eps;
  }
  return data;
}

Dataset linear_scm(std::size_t n, std::uint64_t seed) {
  require_rows(n);
  Dataset data{Matrix(n, 3), std::vector<double>(n)};
  for (std::size_t r = 0; r < n; ++r) {
    Rng rng = row_rng(seed, 2, r);
    auto row = data.x.row(r);
    for (double& v : row) v = rng.normal();
    data.y[r] = 1.5 * row[0] + 1.0 * row[1] + 0.1 * rng.normal();
  }
  return data;
}

std::vector<double> linear_scm_effects() { return {1.5, 1.0, 0.0}; }

Dataset nonlinear_scm(std::size_t n, std::uint64_t seed) {
  require_rows(n);
  Dataset data{Matrix(n, 5), std::vector<double>(n)};
  for (std::size_t r = 0; r < n; ++r) {
    Rng rng = row_rng(seed, 3, r);
    auto row = data.x.row(r);
    row[0] = rng.normal();
    row[1] = 0.6 * row[0] + 0.8 * rng.normal();
    row[2] = rng.normal();
    row[3] = rng.normal();
    row[4] = rng.normal();
    data.y[r] = 3.0 * std::tanh(row[0]) + 0.8 * row[2] + 0.1 * rng.normal();
  }
  return data;
}

std::vector<double> nonlinear_scm_effects() { return {3.0, 0.0, 0.8, 0.0, 0.0}; }

Matrix temporal_ar(std::size_t t, std::size_t d, double phi, double sigma, std::uint64_t seed) {
  if (t < 2 || d < 1) throw DomainError("temporal task needs T >= 2 and d >= 1");
  if (!(sigma >= 0.0)) throw DomainError("temporal noise sigma must be >= 0");
  Matrix m(t, d);
  Rng rng(mix_seed(seed, 4), StreamTag::kData, 0);
  for (std::size_t k = 0; k < d; ++k) m(0, k) = rng.normal();
  for (std::size_t s = 1; s < t; ++s) {
    for (std::size_t k = 0; k < d; ++k) m(s, k) = phi * m(s - 1, k) + sigma * rng.normal();
  }
  return m;
}

Dataset decoupling_task(std::size_t d, std::size_t n, std::uint64_t seed) {
  require_rows(n);
  if (d < 2) throw DomainError("decoupling task needs d >= 2");
  Dataset data{Matrix(n, d), std::vector<double>(n)};
  for (std::size_t r = 0; r < n; ++r) {
    Rng rng = row_rng(seed, 5, r);
    auto row = data.x.row(r);
    for (double& v : row) v = rng.normal();
    data.y[r] = 3.0 * row[0] + 2.0 * row[1] + 0.1 * rng.normal();
  }
  return data;
}

}  // namespace eri::bench
