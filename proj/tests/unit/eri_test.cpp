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

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "eri/dependence.hpp"
#include "eri/eri.hpp"
#include "eri/error.hpp"
#include "eri/rng.hpp"

namespace eri {
namespace {

EriConfig small_cfg(std::size_t n = 200, std::vector<std::uint64_t> seeds = {0, 1, 2}) {
  EriConfig cfg;
  cfg.mc_samples = n;
  cfg.seeds = std::move(seeds);
  return cfg;
}

double l2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

TEST(EriS, ConstantIsPerfectlyStable) {
  const auto m = NeuralModel::random({3, 4, 1}, Activation::kTanh, 0);
  ConstantExplainer c({0.2, 0.3, 0.5});
  const auto s = eri_s(m, c, std::vector<double>{1, 2, 3}, PerturbationLaw{0.5, std::nullopt, 0}, small_cfg());
  EXPECT_EQ(s.drift.mean_drift, 0.0);
  EXPECT_EQ(s.value, 1.0);
}

TEST(EriS, GradientOfLinearModelIsStable) {
  const auto m = NeuralModel::linear(std::vector<double>{1, -2, 0.5});
  const auto s =
      eri_s(m, GradientOnly{}, std::vector<double>{1, 2, 3}, PerturbationLaw{0.5, std::nullopt, 0}, small_cfg());
  EXPECT_EQ(s.drift.mean_drift, 0.0);
  EXPECT_EQ(s.value, 1.0);
}

TEST(EriS, TightnessConstructionFixedDelta) {
  // f(x) = 2x, E = 3 f(x) e_1, so d(E(x), E(x + delta)) = 6 |delta|.
  const auto m = NeuralModel::linear(std::vector<double>{2});
  OutputScaled e(3);
  const std::vector<double> x = {0.4};
  const auto a = e.explain(m, x);
  const auto b = e.explain(m, std::vector<double>{0.5});
  EXPECT_NEAR(distance(a, b, L2Distance{}), 0.6, 1e-12);
}

TEST(EriS, PerSampleDriftEqualsSixTimesDelta) {
  const auto m = NeuralModel::linear(std::vector<double>{2});
  OutputScaled e(3);
  const std::vector<double> x = {0.4};
  const PerturbationLaw law{0.1, std::nullopt, 5};
  const auto cfg = small_cfg(100, {3, 4});
  const auto samples = eri_s_samples(m, e, x, law, cfg);
  ASSERT_EQ(samples.size(), 200u);
  for (std::size_t k = 0; k < samples.size(); ++k) {
    PerturbationLaw run = law;
    run.seed = mix_seed(law.seed, cfg.seeds[k / cfg.mc_samples]);
    const auto delta = sample_perturbation(run, 1, k % cfg.mc_samples);
    EXPECT_NEAR(samples[k], 6.0 * l2(delta), 1e-10);
  }
}

TEST(EriS, LipschitzBoundHoldsWithinCi) {
  const auto m = NeuralModel::linear(std::vector<double>{2});
  OutputScaled e(3);
  const PerturbationLaw law{0.1, std::nullopt, 6};
  const auto s = eri_s(m, e, std::vector<double>{0.4}, law, small_cfg(2000));
  const double bound = 6.0 * law.expected_norm(1);
  EXPECT_LE(s.drift.mean_drift, bound + 4.0 * s.drift.standard_error);
  EXPECT_GE(s.drift.mean_drift, bound - 4.0 * s.drift.standard_error);
}

TEST(EriS, StreamingMatchesBatchAndWorkersAgree) {
  const auto m = NeuralModel::random({4, 8, 1}, Activation::kTanh, 3);
  GradTimesInput e;
  const std::vector<double> x = {0.1, -0.2, 0.3, 0.4};
  auto cfg = small_cfg(300);
  const auto s1 = eri_s(m, e, x, PerturbationLaw{0.2, std::nullopt, 1}, cfg);
  const auto samples = eri_s_samples(m, e, x, PerturbationLaw{0.2, std::nullopt, 1}, cfg);
  long double batch = 0.0L;
  for (double v : samples) batch += v;
  const double mean = static_cast<double>(batch / samples.size());
  EXPECT_NEAR(s1.drift.mean_drift, mean, 1e-12 * mean);
  cfg.workers = 8;
  const auto s8 = eri_s(m, e, x, PerturbationLaw{0.2, std::nullopt, 1}, cfg);
  EXPECT_EQ(s1.drift.mean_drift, s8.drift.mean_drift);
  EXPECT_EQ(s1.drift.standard_error, s8.drift.standard_error);
}

TEST(EriS, HoeffdingOnlyForClampedMetric) {
  const auto m = NeuralModel::linear(std::vector<double>{1, 1});
  auto cfg = small_cfg(50);
  const std::vector<double> x = {1, 1};
  const PerturbationLaw law{0.1, std::nullopt, 0};
  EXPECT_FALSE(eri_s(m, GradTimesInput{}, x, law, cfg).drift.has_hoeffding());
  cfg.distance = ClampedL2Distance{};
  const auto s = eri_s(m, GradTimesInput{}, x, law, cfg);
  ASSERT_TRUE(s.drift.has_hoeffding());
  EXPECT_DOUBLE_EQ(*s.drift.hoeffding_radius, hoeffding_radius(150, 0.95));
  cfg.normalize = true;
  EXPECT_FALSE(eri_s(m, GradTimesInput{}, x, law, cfg).drift.has_hoeffding());
}

TEST(EriS, ScoreIsTransformOfDrift) {
  const auto m = NeuralModel::random({3, 5, 1}, Activation::kReLU, 1);
  const auto s = eri_s(m, GradTimesInput{}, std::vector<double>{1, -1, 2}, PerturbationLaw{0.3, std::nullopt, 0},
                       small_cfg());
  EXPECT_EQ(s.value, 1.0 / (1.0 + s.drift.mean_drift));
}

TEST(Metric, AffineChangeTransformsDriftAffinely) {
  Rng r(1, StreamTag::kSampling, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const double a0 = 0.1 + 5.0 * r.uniform();
    const double b0 = 2.0 * r.uniform();
    StreamingDriftAccumulator d1, d2;
    for (int i = 0; i < 500; ++i) {
      const double v = r.uniform() * 3.0;
      d1.push(v);
      d2.push(a0 * v + b0);
    }
    EXPECT_NEAR(d2.mean(), a0 * d1.mean() + b0, 1e-13 * (a0 * d1.mean() + b0));
  }
}

TEST(Metric, MonotoneTransformPreservesSampleOrder) {
  const auto m = NeuralModel::random({3, 6, 1}, Activation::kTanh, 2);
  const auto cfg = small_cfg(100, {0});
  auto samples = eri_s_samples(m, GradTimesInput{}, std::vector<double>{1, 0, -1},
                               PerturbationLaw{0.3, std::nullopt, 0}, cfg);
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const double a = samples[i], b = samples[i + 1];
    const double ga = std::log1p(a) + a * a * a, gb = std::log1p(b) + b * b * b;
    EXPECT_EQ(a < b, ga < gb);
  }
}

TEST(EriR, CollapseConsistentExplainersHaveZeroDrift) {
  const auto m = NeuralModel::linear(std::vector<double>{1, 1, 1});
  Matrix x(400, 3);
  std::vector<double> y(400);
  for (std::size_t r = 0; r < 400; ++r) {
    Rng rng(1, StreamTag::kData, r);
    for (std::size_t c = 0; c < 3; ++c) x(r, c) = rng.normal();
    y[r] = x(r, 0) + x(r, 2);
  }
  const auto mcir_e = mcir_as_explainer(Dataset{x, y}, McirConfig{});
  const RedundancySpec spec{0, 1, 0.5, 3};
  const std::vector<double> x0 = {0.3, -0.2, 1.0};
  for (const auto& e : std::vector<ExplainerPtr>{
           mcir_e, std::make_shared<ConstantExplainer>(std::vector<double>{1, 2, 3})}) {
    const auto s = eri_r(m, *e, x0, spec, nullptr, small_cfg());
    EXPECT_EQ(s.drift.mean_drift, 0.0);
    EXPECT_EQ(s.value, 1.0);
  }
}

TEST(EriR, EqualPairAttributionWithInvariantCompanion) {
  const auto m = NeuralModel::linear(std::vector<double>{1, 1, 0.5});
  const auto companion = NeuralModel::linear(std::vector<double>{1, 0.5});
  const auto s = eri_r(m, GradientOnly{}, std::vector<double>{0.2, 0.7, -1.0},
                       RedundancySpec{0, 1, 0.5, 1}, &companion, small_cfg());
  EXPECT_EQ(s.drift.mean_drift, 0.0);
}

TEST(EriR, MissingCompanionIsAnError) {
  const auto m = NeuralModel::linear(std::vector<double>{1, 1, 0.5});
  EXPECT_THROW(eri_r(m, GradientOnly{}, std::vector<double>{0, 0, 0}, RedundancySpec{}, nullptr,
                     small_cfg()),
               DomainError);
  const auto wrong = NeuralModel::linear(std::vector<double>{1, 1, 1});
  EXPECT_THROW(eri_r(m, GradientOnly{}, std::vector<double>{0, 0, 0}, RedundancySpec{}, &wrong,
                     small_cfg()),
               DimensionError);
}

TEST(EriR, A2OffsetKeepsHalfEtaUnderMaxMetric) {
  const double eta = 0.8;
  const auto base = std::make_shared<ConstantExplainer>(std::vector<double>{0, 0, 0});
  const auto w = wrap_counterexample(base, A2Break{eta, {1, 0, 0}});
  const auto m = NeuralModel::linear(std::vector<double>{1, 1, 1});
  auto cfg = small_cfg();
  cfg.distance = LInfDistance{};
  const std::vector<double> alphas = {0.9, 0.99, 1.0};
  const auto curve = eri_r_curve(m, *w, std::vector<double>{1, 2, 3}, RedundancySpec{0, 1, 0.5, 0},
                                 alphas, nullptr, cfg);
  for (const auto& d : curve) EXPECT_DOUBLE_EQ(d.mean_drift, eta / 2.0);
}

TEST(EriT, Examples) {
  const auto cfg = small_cfg();
  const std::vector<AttributionVector> constant(5, AttributionVector{1, 2});
  EXPECT_EQ(eri_t(constant, cfg).value, 1.0);

  std::vector<AttributionVector> steady;
  for (int t = 0; t < 11; ++t) steady.push_back(AttributionVector{0.05 * t, 0.0});
  const auto s = eri_t(steady, cfg);
  EXPECT_NEAR(s.drift.mean_drift, 0.05, 1e-15);
  EXPECT_NEAR(s.value, 1.0 / 1.05, 1e-14);

  const auto two = eri_t({AttributionVector{0, 0}, AttributionVector{3, 0}}, cfg);
  EXPECT_EQ(two.drift.mean_drift, 3.0);
  EXPECT_EQ(two.value, 0.25);
  EXPECT_THROW(eri_t(std::vector<AttributionVector>{AttributionVector{1}}, cfg), DomainError);
}

TEST(EriT, SequenceOverloadMatchesExplicitVectors) {
  const auto m = NeuralModel::random({2, 5, 1}, Activation::kTanh, 4);
  Matrix seq(20, 2);
  for (std::size_t t = 0; t < 20; ++t) {
    seq(t, 0) = std::sin(0.3 * t);
    seq(t, 1) = std::cos(0.2 * t);
  }
  GradTimesInput e;
  std::vector<AttributionVector> ex;
  for (std::size_t t = 0; t < 20; ++t) ex.push_back(e.explain(m, seq.row(t)));
  const auto cfg = small_cfg();
  EXPECT_EQ(eri_t(m, e, seq, cfg).drift.mean_drift, eri_t(ex, cfg).drift.mean_drift);
  const auto samples = eri_t_samples(ex, cfg);
  ASSERT_EQ(samples.size(), 19u);
  EXPECT_DOUBLE_EQ(samples[3], distance(ex[3], ex[4], L2Distance{}));
}

TEST(EriM, ZeroLearningRateIsStable) {
  const auto m = NeuralModel::random({3, 4, 1}, Activation::kTanh, 0);
  std::vector<Checkpoint> cps = {{0, m, 0.0}, {1, m, 0.0}, {2, m, 0.0}};
  const auto s = eri_m(cps, GradTimesInput{}, std::vector<double>{1, 2, 3}, small_cfg());
  EXPECT_EQ(s.drift.mean_drift, 0.0);
  EXPECT_EQ(s.value, 1.0);
  EXPECT_THROW(eri_m({cps[0]}, GradTimesInput{}, std::vector<double>{1, 2, 3}, small_cfg()),
               DomainError);
}

TEST(EriM, A3FlipMagnitude) {
  const auto m = NeuralModel::random({2, 4, 1}, Activation::kTanh, 0);
  const std::vector<double> u = {0.3, 0.4};
  const auto w = wrap_counterexample(std::make_shared<GradTimesInput>(), A3Break{u});
  std::vector<Checkpoint> cps(5, Checkpoint{0, m, 0.0});
  const auto s = eri_m(cps, *w, std::vector<double>{0.5, -0.5}, small_cfg());
  EXPECT_NEAR(s.drift.mean_drift, 2.0 * l2(u), 1e-15);
  EXPECT_NEAR(s.value, 1.0 / (1.0 + 2.0 * l2(u)), 1e-15);
}

TEST(EriM, ConstantAcrossTrainedTrajectory) {
  Matrix x(50, 2);
  std::vector<double> y(50);
  for (std::size_t r = 0; r < 50; ++r) {
    Rng rng(2, StreamTag::kData, r);
    x(r, 0) = rng.normal();
    x(r, 1) = rng.normal();
    y[r] = x(r, 0);
  }
  TrainConfig tc;
  tc.steps = 40;
  tc.snapshot_every = 10;
  const auto cps = train(NeuralModel::random({2, 3, 1}, Activation::kTanh, 0), Dataset{x, y}, tc);
  ConstantExplainer c({1, 1});
  EXPECT_EQ(eri_m(cps, c, std::vector<double>{0, 0}, small_cfg()).value, 1.0);
  EXPECT_GT(eri_m(cps, GradTimesInput{}, std::vector<double>{1, 1}, small_cfg()).drift.mean_drift,
            0.0);
}

TEST(EriD, SameSourceAndConstant) {
  const auto m = NeuralModel::random({2, 4, 1}, Activation::kTanh, 0);
  const GaussianSource p{{0, 0}, 1.0, 200, 9};
  EXPECT_EQ(eri_d(m, GradTimesInput{}, p, p, small_cfg()).drift.mean_drift, 0.0);
  const GaussianSource q{{1, 1}, 2.0, 300, 10};
  ConstantExplainer c({0.5, 0.5});
  EXPECT_EQ(eri_d(m, c, p, q, small_cfg()).value, 1.0);
  EXPECT_THROW(eri_d(m, c, MatrixSource{Matrix(0, 2)}, q, small_cfg()), DomainError);
}

TEST(EriD, MeanShiftOfLinearGradTimesInput) {
  const double w = 1.7;
  const auto m = NeuralModel::linear(std::vector<double>{w});
  const GaussianSource p{{0.0}, 1.0, 5000, 1};
  const GaussianSource q{{0.2}, 1.0, 5000, 2};
  const auto s = eri_d(m, GradTimesInput{}, p, q, small_cfg(1, default_seeds()));
  const double oracle = std::abs(w) * 0.2;
  // Per-run noise of a difference of two means of 5000 draws, averaged over 10 runs.
  const double se = std::abs(w) * std::sqrt(2.0 / 5000.0) / std::sqrt(10.0);
  EXPECT_NEAR(s.drift.mean_drift, oracle, 4.0 * se);
  EXPECT_EQ(s.drift.n, 10u);
}

TEST(EriD, MatrixSourcesRunOnce) {
  const auto m = NeuralModel::linear(std::vector<double>{2.0, 0.0});
  const Matrix a(2, 2, std::vector<double>{1, 0, 3, 0});
  const Matrix b(1, 2, std::vector<double>{5, 0});
  const auto s = eri_d(m, GradTimesInput{}, MatrixSource{a}, MatrixSource{b}, small_cfg());
  EXPECT_EQ(s.drift.n, 1u);
  EXPECT_DOUBLE_EQ(s.drift.mean_drift, 6.0);
}

ReportContext full_context(const NeuralModel& m) {
  ReportContext ctx;
  ctx.x = std::vector<double>{0.5, -0.5, 1.0};
  ctx.law = PerturbationLaw{0.1, std::nullopt, 0};
  ctx.redundancy = RedundancySpec{0, 1, 0.5, 0};
  ctx.companion = NeuralModel::linear(std::vector<double>{1, 1});
  Matrix seq(10, 3);
  for (std::size_t t = 0; t < 10; ++t) {
    for (std::size_t c = 0; c < 3; ++c) seq(t, c) = std::sin(0.1 * (t + c));
  }
  ctx.sequence = seq;
  ctx.checkpoints = std::vector<Checkpoint>{{0, m, 0.0}, {1, m, 0.0}};
  ctx.shift = std::make_pair(SampleSource{GaussianSource{{0, 0, 0}, 1.0, 50, 1}},
                             SampleSource{GaussianSource{{0.2, 0, 0}, 1.0, 50, 2}});
  return ctx;
}

TEST(Report, ConstantExplainerScoresOneEverywhere) {
  const auto m = NeuralModel::random({3, 4, 1}, Activation::kTanh, 0);
  ConstantExplainer c({1, 0, 2});
  const std::set<Component> all = {Component::kS, Component::kR, Component::kT, Component::kM,
                                   Component::kD};
  for (const AggregatorKind& agg : std::vector<AggregatorKind>{
           UniformMean{}, MinimumAggregator{}, GeometricMean{},
           WeightedMean{{{Component::kS, 0.2}, {Component::kR, 0.2}, {Component::kT, 0.2},
                         {Component::kM, 0.2}, {Component::kD, 0.2}}}}) {
    const auto r = eri_report(m, c, full_context(m), all, small_cfg(), agg);
    ASSERT_EQ(r.components.size(), 5u);
    for (const auto& [k, s] : r.components) EXPECT_EQ(s.value, 1.0);
    ASSERT_TRUE(r.aggregate);
    EXPECT_EQ(r.aggregate->second, 1.0);
    EXPECT_EQ(r.minimum, 1.0);
    EXPECT_EQ(r.explainer_name, "Constant");
  }
}

TEST(Report, ScoresMatchDriftsAndStandaloneCalls) {
  const auto m = NeuralModel::linear(std::vector<double>{1, 1, 0.5});
  auto ctx = full_context(m);
  ctx.companion = NeuralModel::linear(std::vector<double>{1, 0.5});
  const std::set<Component> all = {Component::kS, Component::kR, Component::kT, Component::kM,
                                   Component::kD};
  const auto cfg = small_cfg();
  const auto r = eri_report(m, GradTimesInput{}, ctx, all, cfg, UniformMean{});
  for (const auto& [k, s] : r.components) {
    EXPECT_EQ(s.value, 1.0 / (1.0 + s.drift.mean_drift));
  }
  EXPECT_EQ(r.components.at(Component::kS).drift.mean_drift,
            eri_s(m, GradTimesInput{}, *ctx.x, *ctx.law, cfg).drift.mean_drift);
  double mean = 0.0, mn = 1.0;
  for (const auto& [k, v] : r.scores()) {
    mean += v / 5.0;
    mn = std::min(mn, v);
  }
  EXPECT_NEAR(r.aggregate->second, mean, 1e-15);
  EXPECT_EQ(*r.minimum, mn);
  EXPECT_EQ(r.config_hash, config_hash(cfg));
}

TEST(Report, MissingContextNamesThePiece) {
  const auto m = NeuralModel::linear(std::vector<double>{1, 1, 0.5});
  ReportContext ctx;
  ctx.x = std::vector<double>{0, 0, 0};
  try {
    eri_report(m, GradTimesInput{}, ctx, {Component::kT}, small_cfg());
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("sequence"), std::string::npos);
  }
  EXPECT_THROW(eri_report(m, GradTimesInput{}, ctx, {Component::kS}, small_cfg()), ConfigError);
}

TEST(Config, HashIgnoresWorkersOnly) {
  EriConfig a, b;
  b.workers = 8;
  EXPECT_EQ(config_hash(a), config_hash(b));
  b.mc_samples = 501;
  EXPECT_NE(config_hash(a), config_hash(b));
  EriConfig bad;
  bad.seeds.clear();
  EXPECT_THROW(bad.validate(), ConfigError);
}

}  // namespace
}  // namespace eri
