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

#ifndef ERI_TRANSFORMS_HPP_
#define ERI_TRANSFORMS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "eri/collapse.hpp"
#include "eri/explainers.hpp"

namespace eri {

// delta ~ N(0, sigma^2 I), optionally rejected until ||delta|| <= epsilon_cap.
struct PerturbationLaw {
  double sigma = 0.1;
  std::optional<double> epsilon_cap;
  std::uint64_t seed = 0;

  void validate() const;

  // E||delta|| = sigma sqrt(2) Gamma((d+1)/2) / Gamma(d/2) for the uncapped law.
  double expected_norm(std::size_t d) const;
};

// Deterministic per (law.seed, index). sigma = 0 gives the zero vector.
std::vector<double> sample_perturbation(const PerturbationLaw& law, std::size_t d,
                                        std::uint64_t index);

// x_target <- alpha x_source + sqrt(1 - alpha^2) Z.
struct RedundancyInjection {
  std::size_t source = 0;
  std::size_t target = 1;
  double alpha = 1.0;
  std::uint64_t noise_seed = 0;

  void validate(std::size_t d) const;
};

// Z is drawn from the (noise_seed, index) stream.
std::vector<double> inject_redundancy(std::span<const double> x,
                                      const RedundancyInjection& inj,
                                      std::uint64_t index = 0);

// Same as inject_redundancy with an explicit noise value.
std::vector<double> inject_redundancy_with_noise(std::span<const double> x,
                                                 const RedundancyInjection& inj, double z);

// Default redundancy grid 0.00, 0.05, ..., 1.00.
std::vector<double> default_alpha_grid();

// K sign(delta), using the perturbation that produced the query point.
struct A1Break {
  double k = 1.0;
};
// Constant offset eta v.
struct A2Break {
  double eta = 1.0;
  std::vector<double> v;
};
// (-1)^t u at checkpoint t.
struct A3Break {
  std::vector<double> u;
};
// w whenever E||delta|| > tau.
struct A4Break {
  double tau = 0.1;
  std::vector<double> w;
};
using CounterexampleVariant = std::variant<A1Break, A2Break, A3Break, A4Break>;

std::string to_string(const CounterexampleVariant& v);

// Base explainer plus a variant-specific additive offset. Offset vectors are
// carried to collapsed spaces by midpoint merge of the pair.
class CounterexampleWrap final : public Explainer {
 public:
  CounterexampleWrap(ExplainerPtr base, CounterexampleVariant variant);
  std::string name() const override;
  AttributionVector explain(const NeuralModel& model, std::span<const double> x,
                            const ExplainContext& ctx) const override;
  bool uses_model() const override { return base_->uses_model(); }
  ExplainerPtr collapsed(const CollapsePair& pair) const override;
  using Explainer::explain;

  const CounterexampleVariant& variant() const { return variant_; }

 private:
  ExplainerPtr base_;
  CounterexampleVariant variant_;
};

ExplainerPtr wrap_counterexample(ExplainerPtr base, CounterexampleVariant variant);

}  // namespace eri

#endif  // ERI_TRANSFORMS_HPP_
