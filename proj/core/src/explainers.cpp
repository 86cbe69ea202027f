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

#include "eri/explainers.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <string>

#include "eri/error.hpp"
#include "eri/rng.hpp"
#include "overloaded.hpp"

namespace eri {
namespace {

using internal::Overloaded;

std::vector<double> to_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

Matrix collapse_rows(const Matrix& m, const CollapsePair& pair) {
  Matrix out(m.rows(), m.cols() - 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = collapse_input(m.row(r), pair);
    std::copy(row.begin(), row.end(), out.row(r).begin());
  }
  return out;
}

}  // namespace

AttributionVector integrated_gradients(const NeuralModel& model, std::span<const double> x,
                                       std::span<const double> baseline,
                                       std::size_t steps) {
  if (steps < 1) throw DomainError("integrated gradients needs steps >= 1");
  require_size(x.size(), model.input_size(), "IG input");
  require_size(baseline.size(), x.size(), "IG baseline");
  const std::size_t d = x.size();
  std::vector<double> sum(d, 0.0), point(d);
  for (std::size_t k = 0; k < steps; ++k) {
    const double a = (static_cast<double>(k) + 0.5) / static_cast<double>(steps);
    for (std::size_t i = 0; i < d; ++i) point[i] = baseline[i] + a * (x[i] - baseline[i]);
    const auto g = model.input_gradient(point);
    for (std::size_t i = 0; i < d; ++i) sum[i] += g[i];
  }
  for (std::size_t i = 0; i < d; ++i) {
    sum[i] = (x[i] - baseline[i]) * sum[i] / static_cast<double>(steps);
  }
  return AttributionVector(std::move(sum));
}

double shapley_coalition_value(const NeuralModel& model, std::span<const double> x,
                               const ShapleyValueFn& value_fn, std::uint64_t mask) {
  const std::size_t d = x.size();
  std::vector<double> z(d);
  return std::visit(
      Overloaded{
          [&](const BaselineReplacement& b) {
            require_size(b.baseline.size(), d, "Shapley baseline");
            for (std::size_t k = 0; k < d; ++k) z[k] = (mask >> k) & 1U ? x[k] : b.baseline[k];
            return model.forward(z);
          },
          [&](const BackgroundExpectation& b) {
            if (b.background.rows() == 0) throw DomainError("Shapley background is empty");
            require_size(b.background.cols(), d, "Shapley background width");
            double s = 0.0;
            for (std::size_t r = 0; r < b.background.rows(); ++r) {
              const auto row = b.background.row(r);
              for (std::size_t k = 0; k < d; ++k) z[k] = (mask >> k) & 1U ? x[k] : row[k];
              s += model.forward(z);
            }
            return s / static_cast<double>(b.background.rows());
          },
      },
      value_fn);
}

AttributionVector exact_shapley(const NeuralModel& model, std::span<const double> x,
                                const ShapleyValueFn& value_fn) {
  const std::size_t d = x.size();
  if (d == 0) throw DimensionError("Shapley needs at least one feature");
  if (d > kMaxShapleyFeatures) {
    throw DomainError("exact Shapley is limited to d <= 20, got d=" + std::to_string(d));
  }
  require_size(d, model.input_size(), "Shapley input");
  const std::uint64_t total = std::uint64_t{1} << d;
  std::vector<double> v(total);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    v[mask] = shapley_coalition_value(model, x, value_fn, mask);
  }
  // weight[s] = s! (d-s-1)! / d! = 1 / (d * C(d-1, s)).
  std::vector<double> weight(d);
  double binom = 1.0;
  for (std::size_t s = 0; s < d; ++s) {
    weight[s] = 1.0 / (static_cast<double>(d) * binom);
    binom = binom * static_cast<double>(d - 1 - s) / static_cast<double>(s + 1);
  }
  std::vector<double> phi(d, 0.0);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    const double w = weight[std::min<std::size_t>(std::popcount(mask), d - 1)];
    for (std::size_t i = 0; i < d; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if (mask & bit) continue;
      phi[i] += w * (v[mask | bit] - v[mask]);
    }
  }
  return AttributionVector(std::move(phi));
}

AttributionVector permutation_importance(const NeuralModel& model, const Dataset& eval_set,
                                         std::size_t shuffles, std::uint64_t seed) {
  eval_set.validate();
  if (eval_set.size() < 2) throw DomainError("permutation importance needs >= 2 rows");
  if (shuffles < 1) throw DomainError("permutation importance needs shuffles >= 1");
  require_size(eval_set.features(), model.input_size(), "permutation importance features");
  const double base = mean_squared_error(model, eval_set);
  const std::size_t n = eval_set.size();
  std::vector<double> out(eval_set.features(), 0.0);
  std::vector<std::size_t> perm(n);
  std::vector<double> row;
  for (std::size_t j = 0; j < out.size(); ++j) {
    const auto column = eval_set.x.column(j);
    double total = 0.0;
    for (std::size_t s = 0; s < shuffles; ++s) {
      for (std::size_t r = 0; r < n; ++r) perm[r] = r;
      Rng rng(seed, StreamTag::kPermutation, mix_seed(j, s));
      rng.shuffle(std::span<std::size_t>(perm));
      double loss = 0.0;
      for (std::size_t r = 0; r < n; ++r) {
        const auto src = eval_set.x.row(r);
        row.assign(src.begin(), src.end());
        row[j] = column[perm[r]];
        const double e = model.forward(row) - eval_set.y[r];
        loss += e * e;
      }
      total += loss / static_cast<double>(n) - base;
    }
    out[j] = total / static_cast<double>(shuffles);
  }
  return AttributionVector(std::move(out));
}

AttributionVector GradTimesInput::explain(const NeuralModel& model, std::span<const double> x,
                                          const ExplainContext&) const {
  auto g = model.input_gradient(x);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] *= x[i];
  return AttributionVector(std::move(g));
}

ExplainerPtr GradTimesInput::collapsed(const CollapsePair&) const {
  return std::make_shared<GradTimesInput>();
}

AttributionVector GradientOnly::explain(const NeuralModel& model, std::span<const double> x,
                                        const ExplainContext&) const {
  return AttributionVector(model.input_gradient(x));
}

ExplainerPtr GradientOnly::collapsed(const CollapsePair&) const {
  return std::make_shared<GradientOnly>();
}

IntegratedGradients::IntegratedGradients(std::vector<double> baseline, std::size_t steps)
    : baseline_(std::move(baseline)), steps_(steps) {
  if (steps_ < 1) throw DomainError("integrated gradients needs steps >= 1");
}

AttributionVector IntegratedGradients::explain(const NeuralModel& model,
                                               std::span<const double> x,
                                               const ExplainContext&) const {
  return integrated_gradients(model, x, baseline_, steps_);
}

ExplainerPtr IntegratedGradients::collapsed(const CollapsePair& pair) const {
  return std::make_shared<IntegratedGradients>(collapse_input(baseline_, pair), steps_);
}

Occlusion::Occlusion(std::vector<double> baseline) : baseline_(std::move(baseline)) {}

AttributionVector Occlusion::explain(const NeuralModel& model, std::span<const double> x,
                                     const ExplainContext&) const {
  require_size(baseline_.size(), x.size(), "occlusion baseline");
  const double fx = model.forward(x);
  std::vector<double> z = to_vector(x);
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    z[i] = baseline_[i];
    out[i] = fx - model.forward(z);
    z[i] = x[i];
  }
  return AttributionVector(std::move(out));
}

ExplainerPtr Occlusion::collapsed(const CollapsePair& pair) const {
  return std::make_shared<Occlusion>(collapse_input(baseline_, pair));
}

PermutationImportance::PermutationImportance(Dataset eval_set, std::size_t shuffles,
                                             std::uint64_t seed)
    : eval_set_(std::move(eval_set)), shuffles_(shuffles), seed_(seed) {
  eval_set_.validate();
  if (eval_set_.size() < 2) throw DomainError("permutation importance needs >= 2 rows");
  if (shuffles_ < 1) throw DomainError("permutation importance needs shuffles >= 1");
}

AttributionVector PermutationImportance::explain(const NeuralModel& model,
                                                 std::span<const double>,
                                                 const ExplainContext&) const {
  return permutation_importance(model, eval_set_, shuffles_, seed_);
}

ExplainerPtr PermutationImportance::collapsed(const CollapsePair& pair) const {
  Dataset c{collapse_rows(eval_set_.x, pair), eval_set_.y};
  return std::make_shared<PermutationImportance>(std::move(c), shuffles_, seed_);
}

ExactShapley::ExactShapley(ShapleyValueFn value_fn) : value_fn_(std::move(value_fn)) {
  if (const auto* b = std::get_if<BackgroundExpectation>(&value_fn_)) {
    if (b->background.rows() == 0) throw DomainError("Shapley background is empty");
  }
}

AttributionVector ExactShapley::explain(const NeuralModel& model, std::span<const double> x,
                                        const ExplainContext&) const {
  return exact_shapley(model, x, value_fn_);
}

ExplainerPtr ExactShapley::collapsed(const CollapsePair& pair) const {
  return std::visit(
      Overloaded{
          [&](const BaselineReplacement& b) -> ExplainerPtr {
            return std::make_shared<ExactShapley>(
                BaselineReplacement{collapse_input(b.baseline, pair)});
          },
          [&](const BackgroundExpectation& b) -> ExplainerPtr {
            return std::make_shared<ExactShapley>(
                BackgroundExpectation{collapse_rows(b.background, pair)});
          },
      },
      value_fn_);
}

AttributionVector RandomExplainer::explain(const NeuralModel&, std::span<const double> x,
                                           const ExplainContext&) const {
  if (x.empty()) throw DimensionError("random explainer needs a nonempty input");
  std::uint64_t key = mix_seed(seed_, x.size());
  for (double v : x) key = mix_seed(key, std::bit_cast<std::uint64_t>(v));
  Rng rng(key, StreamTag::kRandomExplainer, 0);
  std::vector<double> out(x.size());
  for (double& v : out) v = rng.normal();
  return AttributionVector(std::move(out));
}

ExplainerPtr RandomExplainer::collapsed(const CollapsePair&) const {
  return std::make_shared<RandomExplainer>(seed_);
}

ConstantExplainer::ConstantExplainer(std::vector<double> c, std::string name)
    : c_(std::move(c)), name_(std::move(name)) {}

AttributionVector ConstantExplainer::explain(const NeuralModel&, std::span<const double>,
                                             const ExplainContext&) const {
  return c_;
}

ExplainerPtr ConstantExplainer::collapsed(const CollapsePair& pair) const {
  return std::make_shared<ConstantExplainer>(remove_coordinate(c_.values(), pair.remove),
                                             name_);
}

std::shared_ptr<ConstantExplainer> make_mean_attrib(std::vector<double> reference_mean) {
  return std::make_shared<ConstantExplainer>(std::move(reference_mean), "MeanAttrib");
}

std::vector<double> mean_attribution(const Explainer& base, const NeuralModel& model,
                                     const Matrix& data) {
  if (data.rows() == 0) throw DomainError("mean attribution needs at least one row");
  std::vector<double> mean(data.cols(), 0.0);
  for (std::size_t r = 0; r < data.rows(); ++r) {
    const auto e = base.explain(model, data.row(r));
    require_size(e.size(), mean.size(), "mean attribution");
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += e[i];
  }
  for (double& v : mean) v /= static_cast<double>(data.rows());
  return mean;
}

AttributionVector LabelOnly::explain(const NeuralModel& model, std::span<const double> x,
                                     const ExplainContext&) const {
  std::vector<double> out(x.size(), 0.0);
  out.at(0) = model.forward(x);
  return AttributionVector(std::move(out));
}

ExplainerPtr LabelOnly::collapsed(const CollapsePair&) const {
  return std::make_shared<LabelOnly>();
}

AttributionVector OutputScaled::explain(const NeuralModel& model, std::span<const double> x,
                                        const ExplainContext&) const {
  std::vector<double> out(x.size(), 0.0);
  out.at(0) = scale_ * model.forward(x);
  return AttributionVector(std::move(out));
}

ExplainerPtr OutputScaled::collapsed(const CollapsePair&) const {
  return std::make_shared<OutputScaled>(scale_);
}

LinearMap::LinearMap(Matrix a) : a_(std::move(a)) {
  if (a_.rows() == 0 || a_.cols() == 0) throw DimensionError("linear map needs a shape");
}

AttributionVector LinearMap::explain(const NeuralModel&, std::span<const double> x,
                                     const ExplainContext&) const {
  require_size(x.size(), a_.cols(), "linear map input");
  std::vector<double> out(a_.rows(), 0.0);
  for (std::size_t r = 0; r < a_.rows(); ++r) {
    const auto row = a_.row(r);
    for (std::size_t c = 0; c < a_.cols(); ++c) out[r] += row[c] * x[c];
  }
  return AttributionVector(std::move(out));
}

double LinearMap::lipschitz() const {
  double s = 0.0;
  for (double v : a_.data()) s += v * v;
  return std::sqrt(s);
}

}  // namespace eri
