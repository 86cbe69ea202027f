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

#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <vector>

#include "eri/aggregate.hpp"
#include "eri/attribution.hpp"
#include "eri/dataset.hpp"
#include "eri/distance.hpp"
#include "eri/drift.hpp"
#include "eri/error.hpp"
#include "eri/parallel.hpp"
#include "eri/rng.hpp"

namespace eri {
namespace {

TEST(Rng, SameKeySameStream) {
  Rng a(42, StreamTag::kPerturbation, 7);
  Rng b(42, StreamTag::kPerturbation, 7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(Rng, DifferentTagOrIndexDiverges) {
  Rng a(42, StreamTag::kPerturbation, 7);
  Rng b(42, StreamTag::kRedundancy, 7);
  Rng c(42, StreamTag::kPerturbation, 8);
  const auto x = a.next_u64();
  EXPECT_NE(x, b.next_u64());
  EXPECT_NE(x, c.next_u64());
}

TEST(Rng, UniformInUnitInterval) {
  Rng r(1, StreamTag::kSampling, 0);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 0.01);
}

TEST(Rng, NormalMoments) {
  Rng r(3, StreamTag::kSampling, 0);
  const int n = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = r.normal();
    s += z;
    s2 += z * z;
  }
  EXPECT_NEAR(s / n, 0.0, 0.01);
  EXPECT_NEAR(s2 / n, 1.0, 0.02);
}

TEST(Rng, BelowIsRoughlyUniform) {
  Rng r(5, StreamTag::kPermutation, 0);
  std::vector<int> counts(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) {
    const auto k = r.below(7);
    ASSERT_LT(k, 7u);
    ++counts[k];
  }
  for (int c : counts) EXPECT_NEAR(c, n / 7, 400);
}

TEST(Rng, ShuffleIsPermutation) {
  std::vector<int> v(50);
  std::iota(v.begin(), v.end(), 0);
  Rng r(9, StreamTag::kPermutation, 1);
  r.shuffle(std::span<int>(v));
  auto sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 50; ++i) EXPECT_EQ(sorted[i], i);
}

TEST(Distance, Examples) {
  EXPECT_EQ(distance(AttributionVector{1, 2}, AttributionVector{1, 2}, L2Distance{}), 0.0);
  EXPECT_DOUBLE_EQ(distance(AttributionVector{0, 0, 0}, AttributionVector{3, 4, 0}, L2Distance{}),
                   5.0);
  EXPECT_DOUBLE_EQ(distance(AttributionVector{1, 0}, AttributionVector{0, 1}, CosineDistance{}),
                   1.0);
  EXPECT_DOUBLE_EQ(distance(AttributionVector{1, -2}, AttributionVector{0, 1}, L1Distance{}), 4.0);
  EXPECT_DOUBLE_EQ(distance(AttributionVector{1, -2}, AttributionVector{0, 1}, LInfDistance{}),
                   3.0);
}

TEST(Distance, ClampedIsCapped) {
  EXPECT_DOUBLE_EQ(distance(AttributionVector{0, 0}, AttributionVector{3, 4}, ClampedL2Distance{}),
                   1.0);
  EXPECT_DOUBLE_EQ(
      distance(AttributionVector{0, 0}, AttributionVector{0.3, 0.4}, ClampedL2Distance{}), 0.5);
  EXPECT_TRUE(bounded_in_unit_interval(ClampedL2Distance{}));
  EXPECT_FALSE(bounded_in_unit_interval(ClampedL2Distance{2.0}));
  EXPECT_FALSE(bounded_in_unit_interval(L2Distance{}));
}

TEST(Distance, MetricAxiomsOnRandomVectors) {
  Rng r(11, StreamTag::kSampling, 0);
  const std::vector<DistanceKind> kinds = {L1Distance{}, L2Distance{}, LInfDistance{}};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(4), b(4), c(4);
    for (int i = 0; i < 4; ++i) {
      a[i] = r.normal();
      b[i] = r.normal();
      c[i] = r.normal();
    }
    for (const auto& k : kinds) {
      const double ab = distance(a, b, k), ba = distance(b, a, k);
      EXPECT_GE(ab, 0.0);
      EXPECT_DOUBLE_EQ(ab, ba);
      EXPECT_LE(ab, distance(a, c, k) + distance(c, b, k) + 1e-12);
    }
  }
}

TEST(Distance, LengthMismatchThrows) {
  EXPECT_THROW(distance(AttributionVector{1, 2}, AttributionVector{1}, L2Distance{}),
               DimensionError);
}

TEST(Distance, ParseRoundTrip) {
  for (const char* s : {"l1", "l2", "cosine", "linf", "clamped-l2", "clamped-l2:0.25"}) {
    EXPECT_EQ(to_string(parse_distance(s)), s);
  }
  EXPECT_THROW(parse_distance("manhattan"), ConfigError);
  EXPECT_THROW(parse_distance("clamped-l2:-1"), ConfigError);
}

TEST(EriTransform, Examples) {
  EXPECT_EQ(eri_transform(0.0), 1.0);
  EXPECT_EQ(eri_transform(1.0), 0.5);
  EXPECT_DOUBLE_EQ(eri_transform(0.25), 0.8);
  EXPECT_THROW(eri_transform(-0.1), DomainError);
  EXPECT_THROW(eri_transform(std::nan("")), DomainError);
}

TEST(EriTransform, MonotoneDecreasingInUnitInterval) {
  double prev = 1.0;
  for (double d = 0.01; d < 100.0; d *= 1.5) {
    const double v = eri_transform(d);
    EXPECT_LT(v, prev);
    EXPECT_GT(v, 0.0);
    prev = v;
  }
}

TEST(Hoeffding, SampleSizeExamples) {
  EXPECT_EQ(hoeffding_sample_size(0.05, 0.05), 738u);
  EXPECT_EQ(hoeffding_sample_size(0.10, 0.05), 185u);
  const double delta = 1.0 - 2.0 / std::exp(2.0);
  const double oracle = std::ceil(std::log(2.0 / delta) / (2.0 * 0.25));
  EXPECT_EQ(hoeffding_sample_size(0.5, delta), static_cast<std::size_t>(oracle));
}

TEST(Hoeffding, RadiusMatchesFormula) {
  EXPECT_DOUBLE_EQ(hoeffding_radius(200, 0.95), std::sqrt(std::log(40.0) / 400.0));
  EXPECT_THROW(hoeffding_radius(0, 0.95), DomainError);
  EXPECT_THROW(hoeffding_radius(10, 1.0), DomainError);
}

TEST(Hoeffding, RadiusAtSampleSizeIsWithinEta) {
  for (double eta : {0.01, 0.05, 0.1, 0.3}) {
    const auto n = hoeffding_sample_size(eta, 0.05);
    EXPECT_LE(hoeffding_radius(n, 0.95), eta);
    EXPECT_GT(hoeffding_radius(n - 1, 0.95), eta);
  }
}

TEST(Accumulator, Examples) {
  StreamingDriftAccumulator a;
  a.push(0);
  a.push(0);
  EXPECT_EQ(a.mean(), 0.0);
  StreamingDriftAccumulator b;
  b.push(1);
  b.push(3);
  EXPECT_EQ(b.mean(), 2.0);
  EXPECT_THROW(b.push(-1.0), DomainError);
  EXPECT_THROW(StreamingDriftAccumulator{}.mean(), DomainError);
}

TEST(Accumulator, StreamingMatchesBatchMean) {
  Rng r(2024, StreamTag::kSampling, 0);
  std::vector<double> xs(10000);
  for (auto& x : xs) x = r.uniform();
  StreamingDriftAccumulator acc;
  for (double x : xs) acc.push(x);
  long double batch = 0.0L;
  for (double x : xs) batch += x;
  const double oracle = static_cast<double>(batch / xs.size());
  EXPECT_NEAR(acc.mean(), oracle, 1e-12 * oracle);
}

TEST(Accumulator, MergeMatchesSinglePass) {
  Rng r(8, StreamTag::kSampling, 0);
  StreamingDriftAccumulator whole, left, right;
  for (int i = 0; i < 1001; ++i) {
    const double x = r.uniform() * 3.0;
    whole.push(x);
    (i < 400 ? left : right).push(x);
  }
  left.merge(right);
  EXPECT_EQ(left.count(), whole.count());
  EXPECT_NEAR(left.mean(), whole.mean(), 1e-14);
  const auto a = left.finalize(0.95, false);
  const auto b = whole.finalize(0.95, false);
  EXPECT_NEAR(a.standard_error, b.standard_error, 1e-12);
  EXPECT_FALSE(a.has_hoeffding());
  EXPECT_TRUE(whole.finalize(0.95, true).has_hoeffding());
}

TEST(Accumulator, StandardErrorMatchesTwoPassOracle) {
  const std::vector<double> xs = {0.1, 0.5, 0.2, 0.9, 0.4, 0.4};
  StreamingDriftAccumulator acc;
  for (double x : xs) acc.push(x);
  const double m = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  const double se = std::sqrt(ss / (xs.size() - 1) / xs.size());
  EXPECT_NEAR(acc.finalize(0.95, false).standard_error, se, 1e-15);
}

TEST(Accumulator, BlockedIsWorkerCountIndependent) {
  auto sample = [](std::size_t i) {
    Rng r(77, StreamTag::kSampling, i);
    return r.uniform() * 1e3;
  };
  const auto one = accumulate_drift(5000, sample, 1);
  for (std::size_t w : {2u, 3u, 8u}) {
    const auto many = accumulate_drift(5000, sample, w);
    EXPECT_EQ(one.mean(), many.mean());
    EXPECT_EQ(one.finalize(0.9, false).standard_error, many.finalize(0.9, false).standard_error);
  }
}

TEST(CompensatedSum, RecoversCancelledTerms) {
  CompensatedSum s;
  s.add(1e16);
  s.add(1.0);
  s.add(-1e16);
  EXPECT_EQ(s.value(), 1.0);
}

TEST(Aggregate, Examples) {
  EXPECT_EQ(aggregate({{Component::kS, 1}, {Component::kR, 1}, {Component::kT, 1},
                       {Component::kM, 1}},
                      UniformMean{}),
            1.0);
  const ComponentScores c = {
      {Component::kS, 0.9}, {Component::kR, 0.5}, {Component::kT, 0.8}, {Component::kM, 0.7}};
  EXPECT_EQ(aggregate(c, MinimumAggregator{}), 0.5);
  EXPECT_DOUBLE_EQ(aggregate(c, UniformMean{}), 0.725);
  EXPECT_DOUBLE_EQ(aggregate({{Component::kS, 0.25}, {Component::kR, 1}, {Component::kT, 1},
                              {Component::kM, 1}},
                             GeometricMean{}),
                   0.7071067811865476);
}

TEST(Aggregate, OrderingInequalities) {
  Rng r(6, StreamTag::kSampling, 0);
  for (int trial = 0; trial < 500; ++trial) {
    ComponentScores c;
    for (auto k : {Component::kS, Component::kR, Component::kT, Component::kM, Component::kD}) {
      c[k] = 0.01 + 0.99 * r.uniform();
    }
    const double mn = aggregate(c, MinimumAggregator{});
    const double geo = aggregate(c, GeometricMean{});
    const double mean = aggregate(c, UniformMean{});
    EXPECT_LE(mn, geo + 1e-15);
    EXPECT_LE(geo, mean + 1e-15);
    double mx = 0.0;
    for (const auto& [k, v] : c) mx = std::max(mx, v);
    EXPECT_LE(mean, mx + 1e-15);
  }
}

TEST(Aggregate, WeightedMean) {
  const ComponentScores c = {{Component::kS, 0.2}, {Component::kR, 0.6}};
  WeightedMean w{{{Component::kS, 0.25}, {Component::kR, 0.75}}};
  EXPECT_DOUBLE_EQ(aggregate(c, w), 0.5);
  WeightedMean bad{{{Component::kS, 0.5}, {Component::kR, 0.6}}};
  EXPECT_THROW(aggregate(c, bad), DomainError);
  WeightedMean missing{{{Component::kS, 1.0}}};
  EXPECT_THROW(aggregate(c, missing), DomainError);
}

TEST(Aggregate, GeometricZeroAndErrors) {
  EXPECT_EQ(aggregate({{Component::kS, 0.0}, {Component::kR, 0.9}}, GeometricMean{}), 0.0);
  EXPECT_THROW(aggregate({}, UniformMean{}), DomainError);
  EXPECT_THROW(aggregate({{Component::kS, std::nan("")}}, UniformMean{}), DomainError);
}

TEST(Aggregate, ParseRoundTrip) {
  for (const char* s : {"uniform", "min", "geometric"}) {
    EXPECT_EQ(to_string(parse_aggregator(s)), s);
  }
  const auto w = parse_aggregator("weighted:S=0.5,R=0.5");
  EXPECT_EQ(to_string(w), "weighted:S=0.5,R=0.5");
  EXPECT_THROW(parse_aggregator("median"), ConfigError);
  EXPECT_THROW(parse_aggregator("weighted:S"), ConfigError);
  EXPECT_THROW(parse_component("Q"), ConfigError);
}

TEST(Parallel, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(1000, 8, [&](std::size_t i) { hits[i].fetch_add(1); });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(Parallel, PropagatesExceptions) {
  EXPECT_THROW(parallel_for(100, 4,
                            [](std::size_t i) {
                              if (i == 37) throw NumericalError("boom");
                            }),
               NumericalError);
}

TEST(Dataset, SliceAndColumns) {
  Dataset d{Matrix(3, 2, std::vector<double>{1, 2, 3, 4, 5, 6}), {7, 8, 9}};
  d.validate();
  const auto s = d.slice(1, 3);
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s.x(0, 0), 3.0);
  EXPECT_EQ(s.y[1], 9.0);
  EXPECT_EQ(d.x.column(1), (std::vector<double>{2, 4, 6}));
  EXPECT_THROW(d.slice(2, 4), DomainError);
  EXPECT_THROW(Matrix(2, 2, std::vector<double>{1, 2, 3}), DimensionError);
  Dataset bad{Matrix(2, 1), {1.0}};
  EXPECT_THROW(bad.validate(), DimensionError);
}

}  // namespace
}  // namespace eri
