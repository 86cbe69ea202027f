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

#include "eri/drift.hpp"

#include <cmath>
#include <string>

#include "eri/error.hpp"
#include "eri/parallel.hpp"

namespace eri {

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

void CompensatedSum::add(const CompensatedSum& other) {
  add(other.sum_);
  add(other.compensation_);
}

EriScore EriScore::from_drift(const DriftEstimate& drift) {
  return EriScore{eri_transform(drift.mean_drift), drift};
}

double eri_transform(double drift) {
  if (!std::isfinite(drift) || drift < 0.0) {
    throw DomainError("drift must be finite and nonnegative, got " +
                      std::to_string(drift));
  }
  return 1.0 / (1.0 + drift);
}

double hoeffding_radius(std::size_t n, double confidence) {
  if (n == 0) throw DomainError("hoeffding radius needs n >= 1");
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw DomainError("confidence must lie in (0, 1)");
  }
  return std::sqrt(std::log(2.0 / (1.0 - confidence)) /
                   (2.0 * static_cast<double>(n)));
}

std::size_t hoeffding_sample_size(double eta, double delta) {
  if (!(eta > 0.0 && eta < 1.0)) throw DomainError("eta must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
  const double n = std::log(2.0 / delta) / (2.0 * eta * eta);
  return static_cast<std::size_t>(std::ceil(n));
}

void StreamingDriftAccumulator::push(double sample) {
  if (!std::isfinite(sample) || sample < 0.0) {
    throw DomainError("drift sample must be finite and nonnegative, got " +
                      std::to_string(sample));
  }
  ++n_;
  sum_.add(sample);
  const double delta = sample - welford_mean_;
  welford_mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (sample - welford_mean_);
}

void StreamingDriftAccumulator::merge(const StreamingDriftAccumulator& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(other.n_);
  const double delta = other.welford_mean_ - welford_mean_;
  const double total = na + nb;
  welford_mean_ += delta * nb / total;
  m2_ += other.m2_ + delta * delta * na * nb / total;
  sum_.add(other.sum_);
  n_ += other.n_;
}

double StreamingDriftAccumulator::mean() const {
  if (n_ == 0) throw DomainError("no drift samples accumulated");
  return sum_.value() / static_cast<double>(n_);
}

DriftEstimate StreamingDriftAccumulator::finalize(double confidence,
                                                  bool bounded_unit) const {
  DriftEstimate out;
  out.mean_drift = mean();
  out.n = n_;
  out.confidence = confidence;
  if (bounded_unit) out.hoeffding_radius = hoeffding_radius(n_, confidence);
  if (n_ > 1) {
    const double variance = std::max(0.0, m2_ / static_cast<double>(n_ - 1));
    out.standard_error = std::sqrt(variance / static_cast<double>(n_));
  }
  return out;
}

StreamingDriftAccumulator accumulate_drift(
    std::size_t n, const std::function<double(std::size_t)>& sample,
    std::size_t workers) {
  const std::size_t blocks = (n + kDriftBlockSize - 1) / kDriftBlockSize;
  std::vector<StreamingDriftAccumulator> partial(blocks);
  parallel_for(blocks, workers, [&](std::size_t b) {
    const std::size_t end = std::min(n, (b + 1) * kDriftBlockSize);
    for (std::size_t i = b * kDriftBlockSize; i < end; ++i) partial[b].push(sample(i));
  });
  StreamingDriftAccumulator total;
  for (const auto& p : partial) total.merge(p);
  return total;
}

std::vector<double> collect_drift(
    std::size_t n, const std::function<double(std::size_t)>& sample,
    std::size_t workers) {
  std::vector<double> out(n);
  parallel_for(n, workers, [&](std::size_t i) { out[i] = sample(i); });
  return out;
}

}  // namespace eri
