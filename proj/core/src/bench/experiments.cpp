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

#include "eri/bench/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "eri/bench/stats.hpp"
#include "eri/bench/synthetic.hpp"
#include "eri/error.hpp"
#include "eri/parallel.hpp"
#include "eri/rng.hpp"

namespace eri::bench {
namespace {

std::size_t env_dim(const ExplainerEnv& env) {
  if (env.model) return env.model->input_size();
  if (env.data) return env.data->features();
  throw ConfigError("explainer factory needs a model or a dataset");
}

const Dataset& need_data(const ExplainerEnv& env, const std::string& name) {
  if (!env.data) throw ConfigError("explainer " + name + " needs a dataset");
  return *env.data;
}

const NeuralModel& need_model(const ExplainerEnv& env, const std::string& name) {
  if (!env.model) throw ConfigError("explainer " + name + " needs a model");
  return *env.model;
}

Matrix tail_rows(const Matrix& m, std::size_t count) {
  count = std::min(count, m.rows());
  Matrix out(count, m.cols());
  for (std::size_t r = 0; r < count; ++r) {
    const auto src = m.row(m.rows() - count + r);
    std::copy(src.begin(), src.end(), out.row(r).begin());
  }
  return out;
}

Matrix head_rows(const Matrix& m, std::size_t count) {
  count = std::min(count, m.rows());
  Matrix out(count, m.cols());
  for (std::size_t r = 0; r < count; ++r) {
    const auto src = m.row(r);
    std::copy(src.begin(), src.end(), out.row(r).begin());
  }
  return out;
}

Dataset drop_column(const Dataset& data, std::size_t column) {
  Dataset out{Matrix(data.size(), data.features() - 1), data.y};
  for (std::size_t r = 0; r < data.size(); ++r) {
    const auto row = remove_coordinate(data.x.row(r), column);
    std::copy(row.begin(), row.end(), out.x.row(r).begin());
  }
  return out;
}

std::vector<double> mean_abs_attribution(const Explainer& e, const NeuralModel& model,
                                         const Matrix& rows) {
  std::vector<double> out(rows.cols(), 0.0);
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    const auto a = e.explain(model, rows.row(r));
    require_size(a.size(), out.size(), "attribution width");
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += std::abs(a[i]);
  }
  for (double& v : out) v /= static_cast<double>(rows.rows());
  return out;
}

std::vector<double> head(std::span<const double> v, std::size_t count) {
  return {v.begin(), v.begin() + static_cast<std::ptrdiff_t>(std::min(count, v.size()))};
}

}  // namespace

ExplainerPtr make_explainer(const std::string& name, const ExplainerEnv& env) {
  if (name == "GradTimesInput") return std::make_shared<GradTimesInput>();
  if (name == "GradientOnly") return std::make_shared<GradientOnly>();
  if (name == "LabelOnly") return std::make_shared<LabelOnly>();
  if (name == "Random") return std::make_shared<RandomExplainer>(env.seed);
  if (name == "IG") {
    return std::make_shared<IntegratedGradients>(std::vector<double>(env_dim(env), 0.0),
                                                 env.ig_steps);
  }
  if (name == "Occlusion") {
    return std::make_shared<Occlusion>(std::vector<double>(env_dim(env), 0.0));
  }
  if (name == "Constant") {
    return std::make_shared<ConstantExplainer>(std::vector<double>(env_dim(env), 0.0));
  }
  if (name == "Permutation") {
    const Dataset& data = need_data(env, name);
    const std::size_t rows = std::min(env.permutation_rows, data.size());
    return std::make_shared<PermutationImportance>(data.slice(0, rows),
                                                   env.permutation_shuffles, env.seed);
  }
  if (name == "SHAP") {
    const Dataset& data = need_data(env, name);
    return std::make_shared<ExactShapley>(
        BackgroundExpectation{tail_rows(data.x, env.shap_background)});
  }
  if (name == "MeanAttrib") {
    const Dataset& data = need_data(env, name);
    return make_mean_attrib(mean_attribution(GradTimesInput{}, need_model(env, name), data.x));
  }
  if (name == "MCIR") return mcir_as_explainer(need_data(env, name), McirConfig{});
  if (name == "LocalMI" || name == "LocalHSIC") {
    const auto m = name == "LocalMI" ? DependenceMeasure::kMutualInformation
                                     : DependenceMeasure::kHsic;
    return std::make_shared<LocalDependence>(m, env.local_sigma, env.local_samples, env.seed);
  }
  throw ConfigError("unknown explainer: " + name);
}

std::vector<Checkpoint> train_mlp(const Dataset& data, std::size_t hidden,
                                  Activation activation, const TrainConfig& cfg) {
  const auto init =
      NeuralModel::random({data.features(), hidden, 1}, activation, cfg.seed);
  return train(init, data, cfg);
}

// ---- collapse curve -------------------------------------------------------

std::vector<double> CollapseCurveResult::column(const std::string& explainer) const {
  std::vector<double> out;
  for (const auto& r : rows) {
    if (r.explainer == explainer) out.push_back(r.duplicate_score);
  }
  return out;
}

CollapseCurveResult run_collapse_curve(const CollapseCurveConfig& cfg) {
  const std::vector<double> alphas = cfg.alphas.empty() ? default_alpha_grid() : cfg.alphas;
  if (cfg.d < 2) throw ConfigError("collapse curve needs d >= 2");
  if (cfg.eval_points == 0) throw ConfigError("collapse curve needs eval_points >= 1");
  CollapseCurveResult result;
  std::vector<std::string> names;
  for (const auto& name : cfg.explainers) {
    static const std::vector<std::string> known = {
        "MCIR", "MI", "HSIC", "IG", "SHAP", "Permutation", "Random",
        "GradTimesInput", "GradientOnly", "Occlusion"};
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      result.skipped.push_back(name + ": not applicable to the collapse curve");
      log_warning("collapse curve skips " + name);
      continue;
    }
    if (name == "SHAP" && cfg.d > kMaxShapleyFeatures) {
      result.skipped.push_back(name + ": d exceeds the exact Shapley guard");
      log_warning("collapse curve skips SHAP at d=" + std::to_string(cfg.d));
      continue;
    }
    names.push_back(name);
  }

  const std::size_t na = alphas.size();
  std::vector<Dataset> data(na);
  std::vector<std::optional<NeuralModel>> models(na);
  parallel_for(na, cfg.workers, [&](std::size_t a) {
    data[a] = redundancy_sweep(cfg.d, alphas[a], cfg.n, cfg.seed);
    std::vector<std::size_t> all(cfg.d);
    std::iota(all.begin(), all.end(), 0);
    // Ridge keeps the fit defined when the pair is perfectly collinear.
    const LinearFit fit = fit_linear(data[a], all, 1e-6);
    models[a] = NeuralModel::linear(fit.coefficients, fit.intercept);
  });

  std::vector<double> raw(names.size() * na, 0.0);
  parallel_for(raw.size(), cfg.workers, [&](std::size_t cell) {
    const std::string& name = names[cell / na];
    const std::size_t a = cell % na;
    const Dataset& ds = data[a];
    const auto x1 = ds.x.column(1);
    if (name == "MCIR") {
      McirConfig mc;
      mc.binning = cfg.binning;
      raw[cell] = mcir(ds, mc)[1];
    } else if (name == "MI") {
      raw[cell] = mutual_information(x1, ds.y, cfg.binning);
    } else if (name == "HSIC") {
      raw[cell] = hsic(head(x1, cfg.hsic_samples), head(ds.y, cfg.hsic_samples), KernelSpec{});
    } else {
      ExplainerEnv env;
      env.data = &ds;
      env.model = &*models[a];
      env.seed = cfg.seed;
      const auto e = make_explainer(name, env);
      const Matrix pts = head_rows(ds.x, cfg.eval_points);
      raw[cell] = mean_abs_attribution(*e, *models[a], pts)[1];
    }
  });

  for (std::size_t k = 0; k < names.size(); ++k) {
    double scale = 1.0;
    if (names[k] != "MI") {
      double mx = 0.0;
      for (std::size_t a = 0; a < na; ++a) mx = std::max(mx, raw[k * na + a]);
      if (mx > 0.0) scale = mx;
    }
    for (std::size_t a = 0; a < na; ++a) {
      result.rows.push_back({names[k], alphas[a], raw[k * na + a] / scale});
    }
  }
  for (double a : alphas) result.rows.push_back({"reference", a, 1.0 - a});
  return result;
}

// ---- decoupling -----------------------------------------------------------

std::vector<std::size_t> top_k_features(const Explainer& explainer, const NeuralModel& model,
                                        const Matrix& rows, std::size_t k) {
  const auto score = mean_abs_attribution(explainer, model, rows);
  std::vector<std::size_t> order(score.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });
  std::vector<std::size_t> out;
  for (std::size_t i : order) {
    if (out.size() == k) break;
    if (score[i] > 0.0) out.push_back(i);
  }
  return out;
}

std::vector<DecouplingRow> run_decoupling(const DecouplingConfig& cfg) {
  cfg.eri.validate();
  if (cfg.query_points == 0) throw ConfigError("decoupling needs query_points >= 1");
  const Dataset all = decoupling_task(cfg.d, cfg.n, cfg.seed);
  const std::size_t split = cfg.n * 7 / 10;
  const Dataset train_set = all.slice(0, split);
  const Dataset test_set = all.slice(split, all.size());
  TrainConfig tc = cfg.train;
  tc.seed = cfg.seed;
  const NeuralModel model = train_mlp(train_set, cfg.hidden, Activation::kTanh, tc).back().model;
  const NeuralModel companion =
      train_mlp(drop_column(train_set, cfg.remove), cfg.hidden, Activation::kTanh, tc)
          .back()
          .model;
  const Matrix sequence = temporal_ar(cfg.horizon, cfg.d, cfg.ar_phi, cfg.ar_sigma, cfg.seed);
  const PerturbationLaw law{cfg.sigma, std::nullopt, cfg.seed};
  const RedundancySpec redundancy{cfg.keep, cfg.remove, 0.5, cfg.seed};
  const std::size_t q = std::min(cfg.query_points, test_set.size());

  ExplainerEnv env;
  env.data = &train_set;
  env.model = &model;
  env.seed = cfg.seed;

  std::vector<DecouplingRow> rows;
  for (const auto& name : cfg.explainers) {
    const auto e = make_explainer(name, env);
    DecouplingRow row;
    row.explainer = name;
    for (std::size_t i = 0; i < q; ++i) {
      const auto x = test_set.x.row(i);
      row.delta_s += eri_s(model, *e, x, law, cfg.eri).drift.mean_drift;
      row.delta_r += eri_r(model, *e, x, redundancy, &companion, cfg.eri).drift.mean_drift;
    }
    row.delta_s /= static_cast<double>(q);
    row.delta_r /= static_cast<double>(q);
    const EriScore t = eri_t(model, *e, sequence, cfg.eri);
    row.delta_t = t.drift.mean_drift;
    row.eri_t = t.value;
    const auto cols = top_k_features(*e, model, test_set.x, cfg.top_k);
    row.topk_r2 = r_squared(fit_linear(train_set, cols), test_set, cols);
    rows.push_back(row);
  }
  return rows;
}

// ---- SCM ranking ----------------------------------------------------------

std::vector<ScmRow> run_scm(const ScmConfig& cfg) {
  if (cfg.seeds.empty()) throw ConfigError("SCM run needs at least one seed");
  const std::vector<double> effects =
      cfg.nonlinear ? nonlinear_scm_effects() : linear_scm_effects();
  const std::size_t ne = cfg.explainers.size();
  std::vector<ScmRow> rows(cfg.seeds.size() * ne);
  parallel_for(cfg.seeds.size(), cfg.workers, [&](std::size_t s) {
    const std::uint64_t seed = cfg.seeds[s];
    const Dataset all = cfg.nonlinear ? nonlinear_scm(cfg.n, seed) : linear_scm(cfg.n, seed);
    const std::size_t split = cfg.n * 8 / 10;
    const Dataset train_set = all.slice(0, split);
    const Matrix eval = head_rows(all.slice(split, all.size()).x, cfg.eval_points);
    TrainConfig tc = cfg.train;
    tc.seed = seed;
    const NeuralModel model =
        train_mlp(train_set, cfg.hidden, Activation::kTanh, tc).back().model;
    for (std::size_t k = 0; k < ne; ++k) {
      const std::string& name = cfg.explainers[k];
      ScmRow row;
      row.seed = seed;
      row.explainer = name;
      if (name == "MI") {
        for (std::size_t i = 0; i < all.features(); ++i) {
          row.importance.push_back(mutual_information(all.x.column(i), all.y, BinningSpec{}));
        }
      } else if (name == "HSIC") {
        const auto y = head(all.y, cfg.hsic_samples);
        for (std::size_t i = 0; i < all.features(); ++i) {
          row.importance.push_back(
              hsic(head(all.x.column(i), cfg.hsic_samples), y, KernelSpec{}));
        }
      } else {
        ExplainerEnv env;
        env.data = &train_set;
        env.model = &model;
        env.seed = seed;
        env.ig_steps = cfg.ig_steps;
        row.importance = mean_abs_attribution(*make_explainer(name, env), model, eval);
      }
      row.spearman = spearman(row.importance, effects);
      row.kendall = kendall_tau_b(row.importance, effects);
      const auto top = std::max_element(row.importance.begin(), row.importance.end());
      const auto truth = std::max_element(effects.begin(), effects.end());
      row.top_is_first = (top - row.importance.begin()) == (truth - effects.begin()) &&
                         std::count(row.importance.begin(), row.importance.end(), *top) == 1;
      double total = 0.0, causal = 0.0;
      for (std::size_t i = 0; i < effects.size(); ++i) {
        total += row.importance[i];
        if (effects[i] != 0.0) causal += row.importance[i];
      }
      row.causal_mass = total > 0.0 ? causal / total : 0.0;
      rows[s * ne + k] = std::move(row);
    }
  });
  return rows;
}

// ---- minimality -----------------------------------------------------------

MinimalityResult run_minimality_suite(const MinimalityConfig& cfg, const std::string& base_name) {
  if (cfg.d < 3) throw ConfigError("minimality fixture needs d >= 3");
  if (cfg.seeds.empty()) throw ConfigError("minimality needs at least one seed");
  MinimalityResult result;
  result.diagonal = true;
  const std::vector<double> high_alphas = {0.95, 0.96, 0.97, 0.98, 0.99};
  for (std::uint64_t seed : cfg.seeds) {
    Rng rng(seed, StreamTag::kSeed, 0);
    std::vector<double> w(cfg.d), x(cfg.d);
    for (double& v : w) v = 0.5 + rng.uniform();
    w[1] = w[0];
    for (double& v : x) v = rng.normal();
    const NeuralModel model = NeuralModel::linear(w);
    const NeuralModel companion = NeuralModel::linear(remove_coordinate(w, 1));

    Dataset frozen{Matrix(8, cfg.d), std::vector<double>(8)};
    for (std::size_t r = 0; r < 8; ++r) {
      for (std::size_t c = 0; c < cfg.d; ++c) frozen.x(r, c) = rng.normal();
      frozen.y[r] = model.forward(frozen.x.row(r));
    }
    const auto checkpoints =
        train(model, frozen, TrainConfig{0.0, 4, seed, 1, Optimizer::kSGD, {}, 0});

    EriConfig ec;
    ec.distance = L2Distance{};
    ec.mc_samples = cfg.mc_samples;
    ec.seeds = {seed};

    ExplainerEnv env;
    env.model = &model;
    env.seed = seed;
    const ExplainerPtr base = make_explainer(base_name, env);

    std::vector<double> e0(cfg.d, 0.0);
    e0[0] = 1.0;
    const std::vector<std::pair<std::string, ExplainerPtr>> subjects = {
        {"base", base},
        {"A1Break", wrap_counterexample(base, A1Break{cfg.k})},
        {"A2Break", wrap_counterexample(base, A2Break{cfg.eta, e0})},
        {"A3Break", wrap_counterexample(base, A3Break{std::vector<double>(cfg.d, cfg.u_scale)})},
        {"A4Break",
         wrap_counterexample(base, A4Break{cfg.tau, std::vector<double>(cfg.d, cfg.w_scale)})},
    };

    for (std::size_t k = 0; k < subjects.size(); ++k) {
      const Explainer& e = *subjects[k].second;
      MinimalityRow row;
      row.seed = seed;
      row.wrapper = subjects[k].first;

      const PerturbationLaw tiny{cfg.small_sigma, std::nullopt, seed};
      row.tests[0].statistic = eri_s(model, e, x, tiny, ec).drift.mean_drift;
      row.tests[0].pass = row.tests[0].statistic <= cfg.a1_threshold;

      const auto curve =
          eri_r_curve(model, e, x, RedundancySpec{0, 1, 0.5, seed}, high_alphas, &companion, ec);
      double worst = 0.0;
      for (const auto& c : curve) worst = std::max(worst, c.mean_drift);
      row.tests[1].statistic = worst;
      row.tests[1].pass = worst <= cfg.a2_threshold;

      row.tests[2].statistic = eri_m(checkpoints, e, x, ec).drift.mean_drift;
      row.tests[2].pass = row.tests[2].statistic <= cfg.a3_threshold;

      double jump = 0.0;
      std::optional<double> prev;
      for (double sigma : cfg.sigma_grid) {
        const double v = eri_s(model, e, x, PerturbationLaw{sigma, std::nullopt, seed}, ec).value;
        if (prev) jump = std::max(jump, std::abs(v - *prev));
        prev = v;
      }
      row.tests[3].statistic = jump;
      row.tests[3].pass = jump <= cfg.a4_threshold;

      if (k == 0) {
        for (std::size_t t = 0; t < 4; ++t) {
          if (!row.tests[t].pass) {
            throw DomainError("minimality fixture invalid: base explainer " + base_name +
                              " fails axiom test A" + std::to_string(t + 1));
          }
        }
      } else {
        for (std::size_t t = 0; t < 4; ++t) {
          const bool expect_fail = (t + 1 == k);
          if (row.tests[t].pass == expect_fail) result.diagonal = false;
        }
      }
      result.rows.push_back(row);
    }
  }
  return result;
}

// ---- single report --------------------------------------------------------

EriReport run_score(const ScoreConfig& cfg) {
  cfg.eri.validate();
  if (cfg.d < 2) throw ConfigError("score fixture needs d >= 2");
  const Dataset data = decoupling_task(cfg.d, cfg.n, cfg.seed);
  const TrainConfig tc{0.01, 200, cfg.seed, 50, Optimizer::kAdam, {}, 128};
  const auto checkpoints = train_mlp(data, cfg.hidden, Activation::kTanh, tc);
  const NeuralModel& model = checkpoints.back().model;
  const std::size_t remove = cfg.d - 1;
  const NeuralModel companion =
      train_mlp(drop_column(data, remove), cfg.hidden, Activation::kTanh, tc).back().model;

  ExplainerEnv env;
  env.data = &data;
  env.model = &model;
  env.seed = cfg.seed;
  const auto explainer = make_explainer(cfg.explainer, env);

  ReportContext ctx;
  const auto x0 = data.x.row(0);
  ctx.x = std::vector<double>(x0.begin(), x0.end());
  ctx.law = PerturbationLaw{cfg.sigma, std::nullopt, cfg.seed};
  ctx.redundancy = RedundancySpec{0, remove, 0.5, cfg.seed};
  ctx.companion = companion;
  ctx.sequence = temporal_ar(cfg.horizon, cfg.d, 0.9, 0.1, cfg.seed);
  ctx.checkpoints = checkpoints;
  ctx.shift = std::make_pair(
      SampleSource{GaussianSource{std::vector<double>(cfg.d, 0.0), 1.0, 500, cfg.seed}},
      SampleSource{GaussianSource{std::vector<double>(cfg.d, cfg.shift), 1.0, 500, cfg.seed}});
  const std::set<Component> requested(cfg.components.begin(), cfg.components.end());
  return eri_report(model, *explainer, ctx, requested, cfg.eri, cfg.aggregator);
}

}  // namespace eri::bench
