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

#ifndef ERI_BENCH_STATS_HPP_
#define ERI_BENCH_STATS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "eri/dataset.hpp"

namespace eri::bench {

// 1-based ranks; ties share their average rank.
std::vector<double> average_ranks(std::span<const double> v);

// Undefined (nullopt) when either side has no variation.
std::optional<double> spearman(std::span<const double> a, std::span<const double> b);

// Kendall tau-b; undefined when either side is constant.
std::optional<double> kendall_tau_b(std::span<const double> a, std::span<const double> b);

// Solves A x = b (A square, row-major) by Gaussian elimination with partial
// pivoting. Throws NumericalError on a singular system.
std::vector<double> solve_linear_system(Matrix a, std::vector<double> b);

struct LinearFit {
  double intercept = 0.0;
  std::vector<double> coefficients;

  double predict(std::span<const double> row) const;
};

// Least squares with intercept on the given columns; ridge > 0 adds
// ridge * n to the diagonal of the centered normal equations.
LinearFit fit_linear(const Dataset& data, const std::vector<std::size_t>& columns,
                     double ridge = 0.0);

// Coefficient of determination of `fit` (using `columns`) on `data`.
double r_squared(const LinearFit& fit, const Dataset& data,
                 const std::vector<std::size_t>& columns);

}  // namespace eri::bench

#endif  // ERI_BENCH_STATS_HPP_
