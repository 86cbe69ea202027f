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

#ifndef ERI_EXPLAINERS_HPP_
#define ERI_EXPLAINERS_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "eri/attribution.hpp"
#include "eri/collapse.hpp"
#include "eri/dataset.hpp"
#include "eri/model.hpp"

namespace eri {

// Side information the harness passes along with the query point.
struct ExplainContext {
  // The perturbation that produced the query point, if any.
  std::optional<std::vector<double>> perturbation;
  // Position in a checkpoint trajectory, if any.
  std::optional<std::size_t> checkpoint_index;
  // E||delta|| of the active perturbation law; 0 for reference evaluations.
  std::optional<double> perturbation_norm;
};

class Explainer;
using ExplainerPtr = std::shared_ptr<const Explainer>;

// Pure mapping (model, x) -> attribution vector.
class Explainer {
 public:
  virtual ~Explainer() = default;

  virtual std::string name() const = 0;

  virtual AttributionVector explain(const NeuralModel& model, std::span<const double> x,
                                    const ExplainContext& ctx) const = 0;

  AttributionVector explain(const NeuralModel& model, std::span<const double> x) const {
    return explain(model, x, ExplainContext{});
  }

  // False for explainers whose output never reads the model.
  virtual bool uses_model() const { return true; }

  // The same method configured for the collapsed (d-1)-feature input space,
  // or nullptr if no natural analogue exists.
  virtual ExplainerPtr collapsed(const CollapsePair& pair) const = 0;
};

// ---- free-function algorithms ---------------------------------------------

// Midpoint-rule path integral from baseline to x.
AttributionVector integrated_gradients(const NeuralModel& model, std::span<const double> x,
                                       std::span<const double> baseline,
                                       std::size_t steps = 256);

struct BaselineReplacement {
  std::vector<double> baseline;
};
struct BackgroundExpectation {
  Matrix background;
};
using ShapleyValueFn = std::variant<BaselineReplacement, BackgroundExpectation>;

inline constexpr std::size_t kMaxShapleyFeatures = 20;

// Coalition value v_x(S) where bit k of `mask` marks feature k as present.
double shapley_coalition_value(const NeuralModel& model, std::span<const double> x,
                               const ShapleyValueFn& value_fn, std::uint64_t mask);

// Exact Shapley values by enumerating all 2^d coalitions.
AttributionVector exact_shapley(const NeuralModel& model, std::span<const double> x,
                                const ShapleyValueFn& value_fn);

// Mean increase in squared-error loss over `shuffles` column permutations.
AttributionVector permutation_importance(const NeuralModel& model, const Dataset& eval_set,
                                         std::size_t shuffles, std::uint64_t seed);

// ---- explainer kinds ------------------------------------------------------

class GradTimesInput final : public Explainer {
 public:
  std::string name() const override { return "GradTimesInput"; }
  AttributionVector explain(const NeuralModel& model, std::span<const double> x,
                            const ExplainContext& ctx) const override;
  ExplainerPtr collapsed(const CollapsePair& pair) const override;
  using Explainer::explain;
};

// E(x) = grad f(x).
class GradientOnly final : public Explainer {
 public:
  std::string name() const override { return "GradientOnly"; }
  AttributionVector explain(const NeuralModel& model, std::span<const double> x,
                            const ExplainContext& ctx) const override;
  ExplainerPtr collapsed(const CollapsePair& pair) const override;
  using Explainer::explain;
};

class IntegratedGradients final : public Explainer {
 public:
  IntegratedGradients(std::vector<double> baseline, std::size_t steps = 256);
  std::string name() const override { return "IntegratedGradients"; }
  AttributionVector explain(const NeuralModel& model, std::span<const double> x,
                            const ExplainContext& ctx) const override;
  ExplainerPtr collapsed(const CollapsePair& pair) const override;
  using Explainer::explain;

 private:
  std::vector<double> baseline_;
  std::size_t steps_;
};

// E_i(x) = f(x) - f(x with x_i replaced by baseline_i).
class Occlusion final : public Explainer {
 public:
  explicit Occlusion(std::vector<double> baseline);
  std::string name() const override { return "Occlusion"; }
  AttributionVector explain(const NeuralModel& model, std::span<const double> x,
                            const ExplainContext& ctx) const override;
  ExplainerPtr collapsed(const CollapsePair& pair) const override;
  using Explainer::explain;

 private:
  std::vector<double> baseline_;
};

// Global importance; ignores x.
class PermutationImportance final : public Explainer {
 public:
  PermutationImportance(Dataset eval_set, std::size_t shuffles, std::uint64_t seed);
  std::string name() const override { return "PermutationImportance"; }
  AttributionVector explain(const NeuralModel& model, std::span<const double> x,
                            const ExplainContext& ctx) const override;
  ExplainerPtr collapsed(const CollapsePair& pair) const override;
  using Explainer::explain;

 private:
  Dataset eval_set_;
  std::size_t shuffles_;
  std::uint64_t seed_;
};

class ExactShapley final : public Explainer {
 public:
  explicit ExactShapley(ShapleyValueFn value_fn);
  std::string name() const override { return "ExactShapley"; }
  AttributionVector explain(const NeuralModel& model, std::span<const double> x,
                            const ExplainContext& ctx) const override;
  ExplainerPtr collapsed(const CollapsePair& pair) const override;
  using Explainer::explain;

 private:
  ShapleyValueFn value_fn_;
};

// Standard-normal attributions keyed by (seed, bit pattern of x): pure, but
// unrelated across distinct inputs.
class RandomExplainer final : public Explainer {
 public:
  explicit RandomExplainer(std::uint64_t seed) : seed_(seed) {}
  std::string name() const override { return "Random"; }
  AttributionVector explain(const NeuralModel& model, std::span<const double> x,
                            const ExplainContext& ctx) const override;
  bool uses_model() const override { return false; }
  ExplainerPtr collapsed(const CollapsePair& pair) const override;
  using Explainer::explain;

 private:
  std::uint64_t seed_;
};

// Returns c for every input and model.
class ConstantExplainer final : public Explainer {
 public:
  explicit ConstantExplainer(std::vector<double> c, std::string name = "Constant");
  std::string name() const override { return name_; }
  AttributionVector explain(const NeuralModel& model, std::span<const double> x,
                            const ExplainContext& ctx) const override;
  bool uses_model() const override { return false; }
  ExplainerPtr collapsed(const CollapsePair& pair) const override;
  using Explainer::explain;

 private:
  AttributionVector c_;
  std::string name_;
};

// Returns a precomputed reference mean attribution.
std::shared_ptr<ConstantExplainer> make_mean_attrib(std::vector<double> reference_mean);

// Mean of base.explain over the rows of data.
std::vector<double> mean_attribution(const Explainer& base, const NeuralModel& model,
                                     const Matrix& data);

// E(x) = f(x) e_1.
class LabelOnly final : public Explainer {
 public:
  std::string name() const override { return "LabelOnly"; }
  AttributionVector explain(const NeuralModel& model, std::span<const double> x,
                            const ExplainContext& ctx) const override;
  ExplainerPtr collapsed(const CollapsePair& pair) const override;
  using Explainer::explain;
};

// E(x) = scale * f(x) e_1; Lipschitz constant |scale| with respect to f.
class OutputScaled final : public Explainer {
 public:
  explicit OutputScaled(double scale) : scale_(scale) {}
  std::string name() const override { return "OutputScaled"; }
  AttributionVector explain(const NeuralModel& model, std::span<const double> x,
                            const ExplainContext& ctx) const override;
  ExplainerPtr collapsed(const CollapsePair& pair) const override;
  using Explainer::explain;

 private:
  double scale_;
};

// E(x) = A x, independent of the model. lipschitz() is the Frobenius norm of A,
// an upper bound on the operator norm.
class LinearMap final : public Explainer {
 public:
  explicit LinearMap(Matrix a);
  std::string name() const override { return "LinearMap"; }
  AttributionVector explain(const NeuralModel& model, std::span<const double> x,
                            const ExplainContext& ctx) const override;
  bool uses_model() const override { return false; }
  ExplainerPtr collapsed(const CollapsePair&) const override { return nullptr; }
  using Explainer::explain;

  double lipschitz() const;

 private:
  Matrix a_;
};

}  // namespace eri

#endif  // ERI_EXPLAINERS_HPP_
