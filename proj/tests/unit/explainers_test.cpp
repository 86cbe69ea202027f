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
#include <cmath>
#include <numeric>
#include <vector>

#include "eri/collapse.hpp"
#include "eri/error.hpp"
#include "eri/explainers.hpp"
#include "eri/model.hpp"
#include "eri/rng.hpp"

namespace eri {
namespace {

// f(x1, x2) = ((x1 + x2)^2 - (x1 - x2)^2) / 4 = x1 x2.
NeuralModel product_model() {
  Layer hidden{Matrix(2, 2, std::vector<double>{1, 1, 1, -1}), {0, 0}};
  Layer out{Matrix(1, 2, std::vector<double>{0.25, -0.25}), {0}};
  return NeuralModel({hidden, out}, Activation::kSquare);
}

// f(x) = x1^2 through a one-unit square layer.
NeuralModel square_model() {
  Layer hidden{Matrix(1, 1, std::vector<double>{1}), {0}};
  Layer out{Matrix(1, 1, std::vector<double>{1}), {0}};
  return NeuralModel({hidden, out}, Activation::kSquare);
}

// Coalition value with absent features averaged over background rows.
double background_value(const NeuralModel& m, const std::vector<double>& x, const Matrix& bg,
                        const std::vector<bool>& present) {
  double s = 0.0;
  for (std::size_t r = 0; r < bg.rows(); ++r) {
    std::vector<double> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = present[i] ? x[i] : bg(r, i);
    s += m.forward(z);
  }
  return s / static_cast<double>(bg.rows());
}

// Shapley by averaging marginal contributions over every feature ordering.
std::vector<double> permutation_shapley(const NeuralModel& m, const std::vector<double>& x,
                                        const Matrix& bg) {
  const std::size_t d = x.size();
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> phi(d, 0.0);
  std::size_t count = 0;
  do {
    std::vector<bool> present(d, false);
    double prev = background_value(m, x, bg, present);
    for (std::size_t i : order) {
      present[i] = true;
      const double cur = background_value(m, x, bg, present);
      phi[i] += cur - prev;
      prev = cur;
    }
    ++count;
  } while (std::next_permutation(order.begin(), order.end()));
  for (auto& p : phi) p /= static_cast<double>(count);
  return phi;
}

std::vector<double> values(const AttributionVector& a) {
  return {a.values().begin(), a.values().end()};
}

TEST(Explainers, ConstantIgnoresInputs) {
  ConstantExplainer c({0.5, 0.5});
  const auto m = NeuralModel::random({2, 3, 1}, Activation::kTanh, 0);
  EXPECT_EQ(values(c.explain(m, std::vector<double>{9, -4})), (std::vector<double>{0.5, 0.5}));
  ExplainContext ctx;
  ctx.checkpoint_index = 3;
  EXPECT_EQ(values(c.explain(m, std::vector<double>{0, 1}, ctx)),
            (std::vector<double>{0.5, 0.5}));
  EXPECT_FALSE(c.uses_model());
}

TEST(Explainers, GradTimesInputLinear) {
  const auto m = NeuralModel::linear(std::vector<double>{2, -1});
  EXPECT_EQ(values(GradTimesInput{}.explain(m, std::vector<double>{3, 4})),
            (std::vector<double>{6, -4}));
  EXPECT_EQ(values(GradientOnly{}.explain(m, std::vector<double>{3, 4})),
            (std::vector<double>{2, -1}));
}

TEST(Explainers, IntegratedGradientsLinearIsExact) {
  const auto m = NeuralModel::linear(std::vector<double>{2, -1}, 0.7);
  const std::vector<double> x = {3, 4};
  for (std::size_t steps : {1u, 7u, 256u}) {
    const auto ig = integrated_gradients(m, x, std::vector<double>{0, 0}, steps);
    EXPECT_DOUBLE_EQ(ig[0], 6.0);
    EXPECT_DOUBLE_EQ(ig[1], -4.0);
  }
}

TEST(Explainers, IntegratedGradientsQuadratic) {
  const auto ig =
      integrated_gradients(square_model(), std::vector<double>{2}, std::vector<double>{0}, 512);
  EXPECT_NEAR(ig[0], 4.0, 1e-3);
}

TEST(Explainers, IntegratedGradientsCompletenessImproves) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto m = NeuralModel::random({4, 16, 1}, Activation::kTanh, seed);
    Rng r(seed, StreamTag::kSampling, 0);
    std::vector<double> x(4), x0(4, 0.0);
    for (auto& v : x) v = 2.0 * r.normal();
    const double target = m.forward(x) - m.forward(x0);
    auto gap = [&](std::size_t steps) {
      const auto ig = integrated_gradients(m, x, x0, steps);
      double s = 0.0;
      for (double v : ig.values()) s += v;
      return std::abs(s - target);
    };
    EXPECT_LT(gap(4096), gap(64));
  }
}

TEST(Explainers, OcclusionLinear) {
  const auto m = NeuralModel::linear(std::vector<double>{2, -1}, 1.0);
  Occlusion occ({1, 1});
  EXPECT_EQ(values(occ.explain(m, std::vector<double>{3, 4})), (std::vector<double>{4, -3}));
}

TEST(Shapley, ProductModelIsExact) {
  const auto m = product_model();
  EXPECT_NEAR(m.forward(std::vector<double>{3, -2}), -6.0, 1e-12);
}

TEST(Shapley, RedundancyAsymmetry) {
  const auto m = product_model();
  const Matrix bg(2, 2, std::vector<double>{-1, 1, 1, 1});
  const std::vector<double> x = {1, 1};
  const auto phi = exact_shapley(m, x, BackgroundExpectation{bg});
  EXPECT_NEAR(phi[0], 1.0, 1e-12);
  EXPECT_NEAR(phi[1], 0.0, 1e-12);
  EXPECT_NEAR(phi[0] - phi[1], 1.0, 1e-8);
}

TEST(Shapley, MatchesPermutationOracle) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto m = NeuralModel::random({5, 6, 1}, Activation::kTanh, seed);
    Matrix bg(4, 5);
    for (std::size_t r = 0; r < 4; ++r) {
      Rng rng(seed, StreamTag::kData, r);
      for (std::size_t c = 0; c < 5; ++c) bg(r, c) = rng.normal();
    }
    Rng rx(seed, StreamTag::kSampling, 99);
    std::vector<double> x(5);
    for (auto& v : x) v = rx.normal();
    const auto phi = exact_shapley(m, x, BackgroundExpectation{bg});
    const auto oracle = permutation_shapley(m, x, bg);
    for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(phi[i], oracle[i], 1e-12);
  }
}

TEST(Shapley, SymmetryAndEfficiency) {
  const auto m = product_model();
  const Matrix bg(2, 2, std::vector<double>{1, 1, -1, -1});
  const std::vector<double> x = {0.7, 0.7};
  const auto phi = exact_shapley(m, x, BackgroundExpectation{bg});
  EXPECT_NEAR(phi[0], phi[1], 1e-14);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto net = NeuralModel::random({6, 5, 1}, Activation::kReLU, seed);
    std::vector<double> xs(6), base(6);
    Rng r(seed, StreamTag::kSampling, 0);
    for (std::size_t i = 0; i < 6; ++i) {
      xs[i] = r.normal();
      base[i] = r.normal();
    }
    const ShapleyValueFn fn = BaselineReplacement{base};
    const auto p = exact_shapley(net, xs, fn);
    double s = 0.0;
    for (double v : p.values()) s += v;
    const double full = shapley_coalition_value(net, xs, fn, (1u << 6) - 1);
    const double empty = shapley_coalition_value(net, xs, fn, 0);
    EXPECT_NEAR(s, full - empty, 1e-10);
    EXPECT_NEAR(full, net.forward(xs), 1e-15);
    EXPECT_NEAR(empty, net.forward(base), 1e-15);
  }
}

TEST(Shapley, TooManyFeaturesThrows) {
  const std::size_t d = kMaxShapleyFeatures + 1;
  const auto m = NeuralModel::linear(std::vector<double>(d, 1.0));
  const std::vector<double> x(d, 0.0);
  EXPECT_THROW(exact_shapley(m, x, BaselineReplacement{x}), DomainError);
}

Dataset gaussian_rows(std::size_t n, const std::vector<double>& scales, const NeuralModel& m) {
  Matrix x(n, scales.size());
  std::vector<double> y(n);
  for (std::size_t r = 0; r < n; ++r) {
    Rng rng(31, StreamTag::kData, r);
    for (std::size_t c = 0; c < scales.size(); ++c) x(r, c) = scales[c] * rng.normal();
    y[r] = m.forward(x.row(r));
  }
  return {x, y};
}

TEST(PermutationImportance, UnusedFeatureIsZero) {
  const auto m = NeuralModel::linear(std::vector<double>{1.0, 0.0, -2.0});
  const auto data = gaussian_rows(300, {1, 1, 1}, m);
  const auto imp = permutation_importance(m, data, 5, 1);
  EXPECT_NEAR(imp[1], 0.0, 1e-10);
  EXPECT_GT(imp[0], 0.0);
}

TEST(PermutationImportance, MatchesLinearRiskFormula) {
  // For y = f(x) exactly, shuffling column j adds w_j^2 E(x_j - x_j')^2 = 2 w_j^2 Var(x_j).
  const std::vector<double> w = {3.0, 1.0, 0.5};
  const std::vector<double> scales = {1.0, 1.5, 0.5};
  const auto m = NeuralModel::linear(w);
  const auto data = gaussian_rows(4000, scales, m);
  const auto imp = permutation_importance(m, data, 20, 2);
  for (std::size_t j = 0; j < 3; ++j) {
    const double oracle = 2.0 * w[j] * w[j] * scales[j] * scales[j];
    EXPECT_NEAR(imp[j], oracle, 0.1 * oracle);
  }
  EXPECT_GT(imp[0], imp[1]);
  EXPECT_GT(imp[1], imp[2]);
}

TEST(Explainers, RandomIsDeterministicPerInput) {
  RandomExplainer e(5);
  const auto m = NeuralModel::linear(std::vector<double>{1, 1});
  const auto a = e.explain(m, std::vector<double>{1, 2});
  EXPECT_EQ(a, e.explain(m, std::vector<double>{1, 2}));
  EXPECT_NE(a, e.explain(m, std::vector<double>{1, 2.0000001}));
  EXPECT_NE(a, RandomExplainer(6).explain(m, std::vector<double>{1, 2}));
}

TEST(Explainers, LabelOnlyAndOutputScaled) {
  const auto m = NeuralModel::linear(std::vector<double>{2, 0, 0});
  const std::vector<double> x = {1.5, 7, 7};
  EXPECT_EQ(values(LabelOnly{}.explain(m, x)), (std::vector<double>{3, 0, 0}));
  EXPECT_EQ(values(OutputScaled(3).explain(m, x)), (std::vector<double>{9, 0, 0}));
}

TEST(Explainers, LinearMapLipschitzIsFrobenius) {
  LinearMap lm(Matrix(2, 2, std::vector<double>{1, 2, 2, 4}));
  EXPECT_DOUBLE_EQ(lm.lipschitz(), 5.0);
  const auto m = NeuralModel::linear(std::vector<double>{1, 1});
  EXPECT_EQ(values(lm.explain(m, std::vector<double>{1, -1})), (std::vector<double>{-1, -2}));
}

TEST(Explainers, MeanAttributionIsColumnMean) {
  const auto m = NeuralModel::linear(std::vector<double>{2, -1});
  const Matrix rows(2, 2, std::vector<double>{1, 2, 3, 4});
  const auto mean = mean_attribution(GradTimesInput{}, m, rows);
  EXPECT_EQ(mean, (std::vector<double>{4, -3}));
  const auto e = make_mean_attrib(mean);
  EXPECT_EQ(e->name(), "MeanAttrib");
  EXPECT_EQ(values(e->explain(m, std::vector<double>{0, 0})), mean);
}

TEST(Explainers, CollapsedConstantDropsCoordinate) {
  ConstantExplainer c({1, 2, 3});
  const auto cc = c.collapsed(CollapsePair{0, 1, 0.5});
  const auto m = NeuralModel::linear(std::vector<double>{1, 1});
  EXPECT_EQ(values(cc->explain(m, std::vector<double>{0, 0})), (std::vector<double>{1, 3}));
}

}  // namespace
}  // namespace eri
