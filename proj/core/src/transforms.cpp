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

#include "eri/transforms.hpp"

#include <cmath>
#include <string>

#include "eri/error.hpp"
#include "eri/rng.hpp"
#include "overloaded.hpp"

namespace eri {
namespace {

using internal::Overloaded;

constexpr int kMaxRejections = 100000;

void check_offset(std::span<const double> offset, std::size_t d, const char* what) {
  require_size(offset.size(), d, what);
  for (double v : offset) {
    if (!std::isfinite(v)) throw DomainError(std::string(what) + " is not finite");
  }
}

}  // namespace

void PerturbationLaw::validate() const {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw DomainError("perturbation sigma must be finite and nonnegative");
  }
  if (epsilon_cap && !(*epsilon_cap > 0.0)) {
    throw DomainError("perturbation epsilon_cap must be positive");
  }
}

double PerturbationLaw::expected_norm(std::size_t d) const {
  validate();
  if (d == 0) throw DimensionError("perturbation dimension must be positive");
  const double dd = static_cast<double>(d);
  return sigma * std::sqrt(2.0) * std::exp(std::lgamma((dd + 1.0) / 2.0) - std::lgamma(dd / 2.0));
}

std::vector<double> sample_perturbation(const PerturbationLaw& law, std::size_t d,
                                        std::uint64_t index) {
  law.validate();
  std::vector<double> delta(d, 0.0);
  if (law.sigma == 0.0) return delta;
  Rng rng(law.seed, StreamTag::kPerturbation, index);
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    double sq = 0.0;
    for (double& v : delta) {
      v = law.sigma * rng.normal();
      sq += v * v;
    }
    if (!law.epsilon_cap || std::sqrt(sq) <= *law.epsilon_cap) return delta;
  }
  throw NumericalError("perturbation rejection sampling did not meet epsilon_cap");
}

void RedundancyInjection::validate(std::size_t d) const {
  if (source >= d || target >= d) throw DimensionError("redundancy index out of range");
  if (source == target) throw DomainError("redundancy source and target must differ");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("redundancy alpha must lie in [0, 1]");
}

std::vector<double> inject_redundancy_with_noise(std::span<const double> x,
                                                 const RedundancyInjection& inj, double z) {
  inj.validate(x.size());
  std::vector<double> out(x.begin(), x.end());
  out[inj.target] = inj.alpha * x[inj.source] + std::sqrt(1.0 - inj.alpha * inj.alpha) * z;
  return out;
}

std::vector<double> inject_redundancy(std::span<const double> x,
                                      const RedundancyInjection& inj, std::uint64_t index) {
  Rng rng(inj.noise_seed, StreamTag::kRedundancy, index);
  return inject_redundancy_with_noise(x, inj, rng.normal());
}

std::vector<double> default_alpha_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 20; ++k) grid.push_back(static_cast<double>(k) / 20.0);
  return grid;
}

std::string to_string(const CounterexampleVariant& v) {
  return std::visit(Overloaded{
                        [](const A1Break&) -> std::string { return "A1Break"; },
                        [](const A2Break&) -> std::string { return "A2Break"; },
                        [](const A3Break&) -> std::string { return "A3Break"; },
                        [](const A4Break&) -> std::string { return "A4Break"; },
                    },
                    v);
}

CounterexampleWrap::CounterexampleWrap(ExplainerPtr base, CounterexampleVariant variant)
    : base_(std::move(base)), variant_(std::move(variant)) {
  if (!base_) throw DomainError("counterexample wrapper needs a base explainer");
  std::visit(Overloaded{
                 [](const A1Break& a) {
                   if (!(a.k > 0.0)) throw DomainError("A1Break needs K > 0");
                 },
                 [](const A2Break& a) {
                   if (!(a.eta > 0.0)) throw DomainError("A2Break needs eta > 0");
                 },
                 [](const A3Break&) {},
                 [](const A4Break& a) {
                   if (!(a.tau > 0.0)) throw DomainError("A4Break needs tau > 0");
                 },
             },
             variant_);
}

std::string CounterexampleWrap::name() const {
  return base_->name() + "+" + to_string(variant_);
}

AttributionVector CounterexampleWrap::explain(const NeuralModel& model,
                                              std::span<const double> x,
                                              const ExplainContext& ctx) const {
  const AttributionVector e = base_->explain(model, x, ctx);
  std::vector<double> out(e.values().begin(), e.values().end());
  const std::size_t d = out.size();
  std::visit(
      Overloaded{
          [&](const A1Break& a) {
            if (!ctx.perturbation) return;
            check_offset(*ctx.perturbation, d, "A1Break perturbation");
            for (std::size_t i = 0; i < d; ++i) {
              const double s = (*ctx.perturbation)[i];
              out[i] += a.k * static_cast<double>((s > 0.0) - (s < 0.0));
            }
          },
          [&](const A2Break& a) {
            check_offset(a.v, d, "A2Break direction");
            for (std::size_t i = 0; i < d; ++i) out[i] += a.eta * a.v[i];
          },
          [&](const A3Break& a) {
            if (!ctx.checkpoint_index) {
              throw DomainError("A3Break needs a checkpoint index in the context");
            }
            check_offset(a.u, d, "A3Break offset");
            const double sign = (*ctx.checkpoint_index % 2 == 0) ? 1.0 : -1.0;
            for (std::size_t i = 0; i < d; ++i) out[i] += sign * a.u[i];
          },
          [&](const A4Break& a) {
            if (!ctx.perturbation_norm) {
              throw DomainError("A4Break needs the perturbation norm in the context");
            }
            check_offset(a.w, d, "A4Break offset");
            if (*ctx.perturbation_norm > a.tau) {
              for (std::size_t i = 0; i < d; ++i) out[i] += a.w[i];
            }
          },
      },
      variant_);
  return AttributionVector(std::move(out));
}

ExplainerPtr CounterexampleWrap::collapsed(const CollapsePair& pair) const {
  ExplainerPtr base = base_->collapsed(pair);
  if (!base) return nullptr;
  auto merge = [&](const std::vector<double>& v) {
    return midpoint_merge(v, pair.keep, pair.remove);
  };
  CounterexampleVariant v = std::visit(
      Overloaded{
          [&](const A1Break& a) -> CounterexampleVariant { return a; },
          [&](const A2Break& a) -> CounterexampleVariant { return A2Break{a.eta, merge(a.v)}; },
          [&](const A3Break& a) -> CounterexampleVariant { return A3Break{merge(a.u)}; },
          [&](const A4Break& a) -> CounterexampleVariant {
            return A4Break{a.tau, merge(a.w)};
          },
      },
      variant_);
  return std::make_shared<CounterexampleWrap>(std::move(base), std::move(v));
}

ExplainerPtr wrap_counterexample(ExplainerPtr base, CounterexampleVariant variant) {
  return std::make_shared<CounterexampleWrap>(std::move(base), std::move(variant));
}

}  // namespace eri
