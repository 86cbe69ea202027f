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

#ifndef ERI_DRIFT_HPP_
#define ERI_DRIFT_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace eri {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x);
  void add(const CompensatedSum& other);
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// Monte Carlo estimate of an expected drift.
struct DriftEstimate {
  double mean_drift = 0.0;
  std::size_t n = 0;
  double confidence = 0.95;
  // Set only when every sample is known a priori to lie in [0, 1].
  std::optional<double> hoeffding_radius;
  // Sample standard error of the mean; 0 when n == 1.
  double standard_error = 0.0;

  bool has_hoeffding() const { return hoeffding_radius.has_value(); }
};

// ERI = 1 / (1 + drift), in (0, 1].
struct EriScore {
  double value = 1.0;
  DriftEstimate drift;

  static EriScore from_drift(const DriftEstimate& drift);
};

// psi(drift) = 1 / (1 + drift). Throws DomainError for negative or
// non-finite drift.
double eri_transform(double drift);

// sqrt(ln(2 / (1 - confidence)) / (2 n)).
double hoeffding_radius(std::size_t n, double confidence);

// ceil(ln(2 / delta) / (2 eta^2)); both arguments in (0, 1).
std::size_t hoeffding_sample_size(double eta, double delta);

// Single-pass mean/variance of nonnegative drift samples in O(1) memory.
// Mean uses compensated summation; variance uses Welford/Chan updates.
class StreamingDriftAccumulator {
 public:
  // Throws DomainError for negative or non-finite samples.
  void push(double sample);

  // Appends the samples of `other` as if they were pushed after ours.
  void merge(const StreamingDriftAccumulator& other);

  std::size_t count() const { return n_; }
  double mean() const;

  // Throws DomainError when no sample was pushed.
  DriftEstimate finalize(double confidence, bool bounded_unit) const;

 private:
  std::size_t n_ = 0;
  CompensatedSum sum_;
  double welford_mean_ = 0.0;
  double m2_ = 0.0;
};

// Accumulates sample(i) for i in [0, n) with a fixed block decomposition:
// each block of consecutive indices is reduced sequentially and the block
// accumulators are merged in index order. The result is bit-identical for
// any worker count. `sample` must be safe to call concurrently.
// Samples are reduced in fixed blocks of this many consecutive indices, then
// the blocks are merged in index order. The result is independent of the
// worker count.
inline constexpr std::size_t kDriftBlockSize = 64;

StreamingDriftAccumulator accumulate_drift(
    std::size_t n, const std::function<double(std::size_t)>& sample,
    std::size_t workers);

// Evaluates sample(i) for i in [0, n) into a vector (batch route).
std::vector<double> collect_drift(
    std::size_t n, const std::function<double(std::size_t)>& sample,
    std::size_t workers);

}  // namespace eri

#endif  // ERI_DRIFT_HPP_
