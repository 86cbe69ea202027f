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

#ifndef ERI_BENCH_SYNTHETIC_HPP_
#define ERI_BENCH_SYNTHETIC_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "eri/dataset.hpp"

namespace eri::bench {

// X_k ~ N(0,1) for k != 1; X_1 = alpha X_0 + sqrt(1 - alpha^2) Z with Z shared
// across alpha for a given seed; y = X_0 + X_1 + 0.5 eps.
Dataset redundancy_sweep(std::size_t d, double alpha, std::size_t n, std::uint64_t seed);

// Y = 1.5 X1 + 1.0 X2 + eps; X3 is pure noise. Columns are (X1, X2, X3).
Dataset linear_scm(std::size_t n, std::uint64_t seed);
std::vector<double> linear_scm_effects();

// Y = 3 tanh(X1) + 0.8 X3 + 0.1 eps; X2 = 0.6 X1 + 0.8 N is spurious;
// X4, X5 are noise. Columns are (X1, ..., X5).
Dataset nonlinear_scm(std::size_t n, std::uint64_t seed);
std::vector<double> nonlinear_scm_effects();

// x_t = phi x_{t-1} + sigma eps_t in d independent coordinates, x_0 ~ N(0, I).
Matrix temporal_ar(std::size_t t, std::size_t d, double phi, double sigma, std::uint64_t seed);

// y = 3 x_1 + 2 x_2 + 0.1 eps over d standard-normal features.
Dataset decoupling_task(std::size_t d, std::size_t n, std::uint64_t seed);

}  // namespace eri::bench

#endif  // ERI_BENCH_SYNTHETIC_HPP_
