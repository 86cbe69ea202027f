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

#include "eri/eri.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include "eri/error.hpp"
#include "eri/parallel.hpp"
#include "eri/rng.hpp"
#include "overloaded.hpp"

namespace eri {
namespace {

using internal::Overloaded;

// Re-raises with the component and draw index prepended, keeping the category.
template <typename F>
auto at_draw(const char* component, std::size_t index, F&& f) {
  const auto prefix = [&] {
    return std::string(component) + " draw " + std::to_string(index) + ": ";
  };
  try {
    return f();
  } catch (const NumericalError& e) {
    throw NumericalError(prefix() + e.what());
  } catch (const DimensionError& e) {
    throw DimensionError(prefix() + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(prefix() + e.what());
  } catch (const DomainError& e) {
    throw DomainError(prefix() + e.what());
  }
}

ExplainContext reference_context(const EriConfig& cfg) {
  ExplainContext ctx;
  ctx.checkpoint_index = cfg.checkpoint_index;
  ctx.perturbation_norm = 0.0;
  return ctx;
}

double drift_between(const AttributionVector& ref, const AttributionVector& other,
                     const EriConfig& cfg) {
  double d = distance(ref, other, cfg.distance);
  if (cfg.normalize) d /= ref.norm() + cfg.normalize_epsilon;
  return d;
}

EriScore finish(const StreamingDriftAccumulator& acc, const EriConfig& cfg) {
  return EriScore::from_drift(acc.finalize(cfg.confidence, cfg.bounded_samples()));
}

void require_input(const NeuralModel& model, std::span<const double> x, const Explainer& e) {
  if (e.uses_model()) require_size(x.size(), model.input_size(), "ERI input");
  if (x.empty()) throw DimensionError("ERI input is empty");
}

// ERI-S draw k of the pooled run.
std::function<double(std::size_t)> s_sampler(const NeuralModel& model,
                                             const Explainer& explainer,
                                             std::span<const double> x,
                                             const PerturbationLaw& law,
                                             const EriConfig& cfg,
                                             const AttributionVector& ref) {
  const double norm = law.expected_norm(x.size());
  return [&, norm](std::size_t k) {
    return at_draw("ERI-S", k, [&] {
      const std::size_t s = k / cfg.mc_samples;
      const std::size_t i = k % cfg.mc_samples;
      PerturbationLaw run = law;
      run.seed = mix_seed(law.seed, cfg.seeds[s]);
      auto delta = sample_perturbation(run, x.size(), i);
      std::vector<double> xp(x.begin(), x.end());
      for (std::size_t j = 0; j < xp.size(); ++j) xp[j] += delta[j];
      ExplainContext ctx;
      ctx.checkpoint_index = cfg.checkpoint_index;
      ctx.perturbation_norm = norm;
      ctx.perturbation = std::move(delta);
      return drift_between(ref, explainer.explain(model, xp, ctx), cfg);
    });
  };
}

const NeuralModel& collapsed_model(const NeuralModel& model, const Explainer& explainer,
                                   std::size_t d, const NeuralModel* companion) {
  if (companion) {
    require_size(companion->input_size(), d - 1, "ERI-R companion model input");
    return *companion;
  }
  if (explainer.uses_model()) {
    throw DomainError("ERI-R needs a companion model over d-1 inputs for explainer " +
                      explainer.name());
  }
  return model;
}

std::function<double(std::size_t)> r_sampler(const NeuralModel& model,
                                             const Explainer& explainer,
                                             std::span<const double> x,
                                             const RedundancySpec& spec,
                                             const NeuralModel& target,
                                             std::optional<double> fixed_alpha,
                                             const EriConfig& cfg) {
  return [&, fixed_alpha](std::size_t k) {
    return at_draw("ERI-R", k, [&] {
      const std::size_t s = k / cfg.mc_samples;
      const std::size_t i = k % cfg.mc_samples;
      const std::uint64_t run = mix_seed(spec.seed, cfg.seeds[s]);
      const double alpha =
          fixed_alpha ? *fixed_alpha
                      : spec.alpha0 + (1.0 - spec.alpha0) * Rng(run, StreamTag::kAlpha, i).uniform();
      const double z = Rng(run, StreamTag::kRedundancy, i).normal();
      const auto xt =
          inject_redundancy_with_noise(x, RedundancyInjection{spec.keep, spec.remove, alpha, 0}, z);
      const CollapsePair pair{spec.keep, spec.remove, alpha};
      const ExplainContext ctx = reference_context(cfg);
      const auto lhs = collapse_explanation(explainer.explain(model, xt, ctx), spec.remove);
      const ExplainerPtr coll = explainer.collapsed(pair);
      if (!coll) {
        throw DomainError("explainer " + explainer.name() + " has no collapsed form");
      }
      const auto rhs = coll->explain(target, collapse_input(xt, pair), ctx);
      return drift_between(lhs, rhs, cfg);
    });
  };
}

std::vector<AttributionVector> explain_checkpoints(const std::vector<Checkpoint>& checkpoints,
                                                   const Explainer& explainer,
                                                   std::span<const double> x,
                                                   const EriConfig& cfg) {
  if (checkpoints.size() < 2) throw DomainError("ERI-M needs at least two checkpoints");
  std::vector<std::optional<AttributionVector>> tmp(checkpoints.size());
  parallel_for(checkpoints.size(), cfg.workers, [&](std::size_t k) {
    tmp[k] = at_draw("ERI-M", k, [&] {
      ExplainContext ctx;
      ctx.checkpoint_index = k;
      ctx.perturbation_norm = 0.0;
      return explainer.explain(checkpoints[k].model, x, ctx);
    });
  });
  std::vector<AttributionVector> out;
  out.reserve(tmp.size());
  for (auto& e : tmp) out.push_back(std::move(*e));
  return out;
}

// Mean attribution over the rows, reduced in fixed blocks for determinism.
std::vector<double> mean_explanation(const NeuralModel& model, const Explainer& explainer,
                                     const Matrix& rows, const EriConfig& cfg) {
  if (rows.rows() == 0) throw DomainError("ERI-D sample source is empty");
  const std::size_t blocks = (rows.rows() + kDriftBlockSize - 1) / kDriftBlockSize;
  std::vector<std::vector<CompensatedSum>> partial(blocks);
  const ExplainContext ctx = reference_context(cfg);
  const std::size_t width = explainer.explain(model, rows.row(0), ctx).size();
  parallel_for(blocks, cfg.workers, [&](std::size_t b) {
    partial[b].assign(width, CompensatedSum{});
    const std::size_t end = std::min(rows.rows(), (b + 1) * kDriftBlockSize);
    for (std::size_t r = b * kDriftBlockSize; r < end; ++r) {
      const auto e = at_draw("ERI-D", r, [&] { return explainer.explain(model, rows.row(r), ctx); });
      require_size(e.size(), width, "ERI-D attribution");
      for (std::size_t i = 0; i < width; ++i) partial[b][i].add(e[i]);
    }
  });
  std::vector<CompensatedSum> total(width);
  for (const auto& p : partial) {
    for (std::size_t i = 0; i < width; ++i) total[i].add(p[i]);
  }
  std::vector<double> mean(width);
  for (std::size_t i = 0; i < width; ++i) {
    mean[i] = total[i].value() / static_cast<double>(rows.rows());
  }
  return mean;
}

bool seed_dependent(const SampleSource& s) { return std::holds_alternative<GaussianSource>(s); }

void append_fnv(std::uint64_t& h, const std::string& text) {
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
}

}  // namespace

std::vector<std::uint64_t> default_seeds() {
  std::vector<std::uint64_t> s;
  for (std::uint64_t k = 0; k < 10; ++k) s.push_back(k);
  return s;
}

void EriConfig::validate() const {
  if (mc_samples < 1) throw ConfigError("mc_samples must be >= 1");
  if (seeds.empty()) throw ConfigError("seeds must be nonempty");
  if (!(confidence > 0.0 && confidence < 1.0)) throw ConfigError("confidence must lie in (0, 1)");
  if (!(normalize_epsilon > 0.0)) throw ConfigError("normalize_epsilon must be positive");
  if (workers < 1) throw ConfigError("workers must be >= 1");
}

bool EriConfig::bounded_samples() const {
  return !normalize && bounded_in_unit_interval(distance);
}

std::string config_hash(const EriConfig& cfg) {
  std::ostringstream os;
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  os << "distance=" << to_string(cfg.distance) << ";n=" << cfg.mc_samples << ";seeds=";
  for (auto s : cfg.seeds) os << s << ',';
  os << ";normalize=" << cfg.normalize << ";eps=" << num(cfg.normalize_epsilon)
     << ";confidence=" << num(cfg.confidence) << ";checkpoint=" << cfg.checkpoint_index;
  std::uint64_t h = 0xcbf29ce484222325ULL;
  append_fnv(h, os.str());
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

EriScore eri_s(const NeuralModel& model, const Explainer& explainer,
               std::span<const double> x, const PerturbationLaw& law, const EriConfig& cfg) {
  cfg.validate();
  law.validate();
  require_input(model, x, explainer);
  const auto ref = explainer.explain(model, x, reference_context(cfg));
  const auto acc = accumulate_drift(cfg.mc_samples * cfg.seeds.size(),
                                    s_sampler(model, explainer, x, law, cfg, ref), cfg.workers);
  return finish(acc, cfg);
}

std::vector<double> eri_s_samples(const NeuralModel& model, const Explainer& explainer,
                                  std::span<const double> x, const PerturbationLaw& law,
                                  const EriConfig& cfg) {
  cfg.validate();
  law.validate();
  require_input(model, x, explainer);
  const auto ref = explainer.explain(model, x, reference_context(cfg));
  return collect_drift(cfg.mc_samples * cfg.seeds.size(),
                       s_sampler(model, explainer, x, law, cfg, ref), cfg.workers);
}

void RedundancySpec::validate(std::size_t d) const {
  CollapsePair{keep, remove, 1.0}.validate(d);
  if (!(alpha0 >= 0.0 && alpha0 < 1.0)) throw ConfigError("alpha0 must lie in [0, 1)");
}

EriScore eri_r(const NeuralModel& model, const Explainer& explainer,
               std::span<const double> x, const RedundancySpec& spec,
               const NeuralModel* companion, const EriConfig& cfg) {
  cfg.validate();
  require_input(model, x, explainer);
  spec.validate(x.size());
  const NeuralModel& target = collapsed_model(model, explainer, x.size(), companion);
  const auto acc = accumulate_drift(
      cfg.mc_samples * cfg.seeds.size(),
      r_sampler(model, explainer, x, spec, target, std::nullopt, cfg), cfg.workers);
  return finish(acc, cfg);
}

std::vector<double> eri_r_samples(const NeuralModel& model, const Explainer& explainer,
                                  std::span<const double> x, const RedundancySpec& spec,
                                  const NeuralModel* companion, const EriConfig& cfg) {
  cfg.validate();
  require_input(model, x, explainer);
  spec.validate(x.size());
  const NeuralModel& target = collapsed_model(model, explainer, x.size(), companion);
  return collect_drift(cfg.mc_samples * cfg.seeds.size(),
                       r_sampler(model, explainer, x, spec, target, std::nullopt, cfg),
                       cfg.workers);
}

std::vector<DriftEstimate> eri_r_curve(const NeuralModel& model, const Explainer& explainer,
                                       std::span<const double> x, const RedundancySpec& spec,
                                       std::span<const double> alphas,
                                       const NeuralModel* companion, const EriConfig& cfg) {
  cfg.validate();
  require_input(model, x, explainer);
  spec.validate(x.size());
  const NeuralModel& target = collapsed_model(model, explainer, x.size(), companion);
  std::vector<DriftEstimate> out;
  for (double a : alphas) {
    if (!(a >= 0.0 && a <= 1.0)) throw DomainError("alpha grid values must lie in [0, 1]");
    const auto acc = accumulate_drift(cfg.mc_samples * cfg.seeds.size(),
                                      r_sampler(model, explainer, x, spec, target, a, cfg),
                                      cfg.workers);
    out.push_back(acc.finalize(cfg.confidence, cfg.bounded_samples()));
  }
  return out;
}

std::vector<double> eri_t_samples(const std::vector<AttributionVector>& explanations,
                                  const EriConfig& cfg) {
  cfg.validate();
  if (explanations.size() < 2) throw DomainError("ERI-T needs T >= 2");
  return collect_drift(
      explanations.size() - 1,
      [&](std::size_t t) { return drift_between(explanations[t], explanations[t + 1], cfg); },
      cfg.workers);
}

EriScore eri_t(const std::vector<AttributionVector>& explanations, const EriConfig& cfg) {
  cfg.validate();
  if (explanations.size() < 2) throw DomainError("ERI-T needs T >= 2");
  const auto acc = accumulate_drift(
      explanations.size() - 1,
      [&](std::size_t t) { return drift_between(explanations[t], explanations[t + 1], cfg); },
      cfg.workers);
  return finish(acc, cfg);
}

EriScore eri_t(const NeuralModel& model, const Explainer& explainer, const Matrix& sequence,
               const EriConfig& cfg) {
  cfg.validate();
  if (sequence.rows() < 2) throw DomainError("ERI-T needs T >= 2");
  const ExplainContext ctx = reference_context(cfg);
  // Same block structure as accumulate_drift, holding two explanations.
  StreamingDriftAccumulator total, block;
  AttributionVector prev = explainer.explain(model, sequence.row(0), ctx);
  for (std::size_t t = 1; t < sequence.rows(); ++t) {
    AttributionVector cur =
        at_draw("ERI-T", t, [&] { return explainer.explain(model, sequence.row(t), ctx); });
    block.push(drift_between(prev, cur, cfg));
    if (block.count() == kDriftBlockSize) {
      total.merge(block);
      block = StreamingDriftAccumulator{};
    }
    prev = std::move(cur);
  }
  total.merge(block);
  return finish(total, cfg);
}

std::vector<double> eri_m_samples(const std::vector<Checkpoint>& checkpoints,
                                  const Explainer& explainer, std::span<const double> x,
                                  const EriConfig& cfg) {
  cfg.validate();
  const auto e = explain_checkpoints(checkpoints, explainer, x, cfg);
  return eri_t_samples(e, cfg);
}

EriScore eri_m(const std::vector<Checkpoint>& checkpoints, const Explainer& explainer,
               std::span<const double> x, const EriConfig& cfg) {
  cfg.validate();
  const auto e = explain_checkpoints(checkpoints, explainer, x, cfg);
  return eri_t(e, cfg);
}

Matrix materialize(const SampleSource& source, std::uint64_t run_seed) {
  return std::visit(
      Overloaded{
          [&](const GaussianSource& g) {
            if (g.mean.empty()) throw DimensionError("Gaussian source needs a mean");
            if (g.n == 0) throw DomainError("Gaussian source needs n >= 1");
            if (!(g.sigma >= 0.0)) throw DomainError("Gaussian source sigma must be >= 0");
            Matrix m(g.n, g.mean.size());
            const std::uint64_t seed = mix_seed(g.seed, run_seed);
            for (std::size_t r = 0; r < g.n; ++r) {
              Rng rng(seed, StreamTag::kSampling, r);
              for (std::size_t c = 0; c < g.mean.size(); ++c) {
                m(r, c) = g.mean[c] + g.sigma * rng.normal();
              }
            }
            return m;
          },
          [](const MatrixSource& s) { return s.rows; },
      },
      source);
}

std::vector<double> eri_d_samples(const NeuralModel& model, const Explainer& explainer,
                                  const SampleSource& p, const SampleSource& q,
                                  const EriConfig& cfg) {
  cfg.validate();
  const std::size_t runs =
      (seed_dependent(p) || seed_dependent(q)) ? cfg.seeds.size() : std::size_t{1};
  std::vector<double> out;
  for (std::size_t s = 0; s < runs; ++s) {
    const Matrix rp = materialize(p, cfg.seeds[s]);
    const Matrix rq = materialize(q, cfg.seeds[s]);
    const AttributionVector mp(mean_explanation(model, explainer, rp, cfg));
    const AttributionVector mq(mean_explanation(model, explainer, rq, cfg));
    out.push_back(drift_between(mp, mq, cfg));
  }
  return out;
}

EriScore eri_d(const NeuralModel& model, const Explainer& explainer, const SampleSource& p,
               const SampleSource& q, const EriConfig& cfg) {
  StreamingDriftAccumulator acc;
  for (double v : eri_d_samples(model, explainer, p, q, cfg)) acc.push(v);
  return finish(acc, cfg);
}

ComponentScores EriReport::scores() const {
  ComponentScores out;
  for (const auto& [c, s] : components) out[c] = s.value;
  return out;
}

EriReport eri_report(const NeuralModel& model, const Explainer& explainer,
                     const ReportContext& context, const std::set<Component>& requested,
                     const EriConfig& cfg, const std::optional<AggregatorKind>& aggregator) {
  cfg.validate();
  if (requested.empty()) throw ConfigError("no ERI components requested");
  auto need = [](bool present, Component c, const char* piece) {
    if (!present) {
      throw ConfigError("ERI-" + to_string(c) + " requested but the context has no " + piece);
    }
  };
  EriReport report;
  report.config_hash = config_hash(cfg);
  report.explainer_name = explainer.name();
  for (Component c : requested) {
    switch (c) {
      case Component::kS:
        need(context.x.has_value(), c, "input x");
        need(context.law.has_value(), c, "perturbation law");
        report.components[c] = eri_s(model, explainer, *context.x, *context.law, cfg);
        break;
      case Component::kR:
        need(context.x.has_value(), c, "input x");
        need(context.redundancy.has_value(), c, "redundancy pair");
        report.components[c] =
            eri_r(model, explainer, *context.x, *context.redundancy,
                  context.companion ? &*context.companion : nullptr, cfg);
        break;
      case Component::kT:
        need(context.sequence.has_value(), c, "input sequence");
        report.components[c] = eri_t(model, explainer, *context.sequence, cfg);
        break;
      case Component::kM:
        need(context.x.has_value(), c, "input x");
        need(context.checkpoints.has_value(), c, "checkpoint list");
        report.components[c] = eri_m(*context.checkpoints, explainer, *context.x, cfg);
        break;
      case Component::kD:
        need(context.shift.has_value(), c, "distribution pair");
        report.components[c] =
            eri_d(model, explainer, context.shift->first, context.shift->second, cfg);
        break;
    }
  }
  if (aggregator) {
    const auto scores = report.scores();
    report.aggregate = std::make_pair(*aggregator, aggregate(scores, *aggregator));
    report.minimum = aggregate(scores, MinimumAggregator{});
  }
  return report;
}

}  // namespace eri
