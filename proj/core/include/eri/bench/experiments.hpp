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

#ifndef ERI_BENCH_EXPERIMENTS_HPP_
#define ERI_BENCH_EXPERIMENTS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eri/aggregate.hpp"
#include "eri/dependence.hpp"
#include "eri/eri.hpp"
#include "eri/explainers.hpp"
#include "eri/model.hpp"

namespace eri::bench {

// Everything an explainer factory may need besides its name.
struct ExplainerEnv {
  const Dataset* data = nullptr;
  const NeuralModel* model = nullptr;
  std::uint64_t seed = 0;
  std::size_t ig_steps = 256;
  std::size_t shap_background = 100;
  std::size_t permutation_rows = 500;
  std::size_t permutation_shuffles = 10;
  double local_sigma = 0.1;
  std::size_t local_samples = 500;
};

// Names: GradTimesInput, GradientOnly, IG, Occlusion, Permutation, SHAP,
// Random, Constant, MeanAttrib, LabelOnly, MCIR, LocalMI, LocalHSIC.
ExplainerPtr make_explainer(const std::string& name, const ExplainerEnv& env);

// Hidden-layer MLP trained with the given config; returns all checkpoints.
std::vector<Checkpoint> train_mlp(const Dataset& data, std::size_t hidden,
                                  Activation activation, const TrainConfig& cfg);

// ---- collapse curve -------------------------------------------------------

struct CollapseCurveConfig {
  std::size_t d = 5;
  std::size_t n = 5000;
  std::vector<double> alphas;  // empty selects the default grid
  std::uint64_t seed = 0;
  std::vector<std::string> explainers = {"MCIR", "MI", "HSIC", "IG", "SHAP",
                                         "Permutation", "Random"};
  std::size_t eval_points = 32;
  std::size_t hsic_samples = 1000;
  BinningSpec binning;
  std::size_t workers = 1;
};

struct CollapseRow {
  std::string explainer;
  double alpha = 0.0;
  double duplicate_score = 0.0;
};

struct CollapseCurveResult {
  std::vector<CollapseRow> rows;
  std::vector<std::string> skipped;

  // Scores of one explainer in grid order.
  std::vector<double> column(const std::string& explainer) const;
};

// Duplicate-feature score per (explainer, alpha). MI is reported in nats;
// every other explainer is divided by its maximum over the grid. A
// "reference" explainer carries 1 - alpha.
CollapseCurveResult run_collapse_curve(const CollapseCurveConfig& cfg);

// ---- decoupling -----------------------------------------------------------

struct DecouplingConfig {
  std::size_t d = 5;
  std::size_t n = 2000;
  std::uint64_t seed = 0;
  std::size_t hidden = 32;
  TrainConfig train{0.01, 400, 0, 400, Optimizer::kAdam, {}, 256};
  std::vector<std::string> explainers = {"GradTimesInput", "Constant", "MeanAttrib",
                                         "LabelOnly"};
  double sigma = 0.1;
  std::size_t query_points = 8;
  std::size_t top_k = 2;
  std::size_t horizon = 200;
  double ar_phi = 0.5;
  double ar_sigma = 1.0;
  std::size_t keep = 0;
  std::size_t remove = 4;
  EriConfig eri;
};

struct DecouplingRow {
  std::string explainer;
  double delta_s = 0.0;
  double delta_r = 0.0;
  double delta_t = 0.0;
  double eri_t = 1.0;
  double topk_r2 = 0.0;
};

std::vector<DecouplingRow> run_decoupling(const DecouplingConfig& cfg);

// Features with positive mean |attribution| over rows, best first, at most k.
std::vector<std::size_t> top_k_features(const Explainer& explainer, const NeuralModel& model,
                                        const Matrix& rows, std::size_t k);

// ---- SCM ranking ----------------------------------------------------------

struct ScmConfig {
  bool nonlinear = true;
  std::size_t n = 5000;
  std::vector<std::uint64_t> seeds = default_seeds();
  std::size_t hidden = 32;
  TrainConfig train{0.01, 1500, 0, 1500, Optimizer::kAdam, {}, 256};
  std::vector<std::string> explainers = {"IG", "GradTimesInput", "Random", "MI", "HSIC"};
  std::size_t eval_points = 200;
  std::size_t ig_steps = 64;
  std::size_t hsic_samples = 1000;
  std::size_t workers = 1;
};

struct ScmRow {
  std::uint64_t seed = 0;
  std::string explainer;
  std::vector<double> importance;
  std::optional<double> spearman;
  std::optional<double> kendall;
  bool top_is_first = false;
  // Share of importance on features with nonzero true effect.
  double causal_mass = 0.0;
};

std::vector<ScmRow> run_scm(const ScmConfig& cfg);

// ---- minimality -----------------------------------------------------------

struct MinimalityConfig {
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4};
  std::size_t d = 4;
  double k = 1.0;
  double eta = 1.0;
  double u_scale = 0.5;
  double w_scale = 0.5;
  double tau = 0.1;
  std::size_t mc_samples = 200;
  double small_sigma = 1e-6;
  double a1_threshold = 1e-3;
  double a2_threshold = 0.05;
  double a3_threshold = 1e-12;
  double a4_threshold = 0.05;
  std::vector<double> sigma_grid = {0.001, 0.005, 0.01, 0.02, 0.04, 0.06, 0.08, 0.1, 0.2};
};

struct AxiomTest {
  double statistic = 0.0;
  bool pass = false;
};

struct MinimalityRow {
  std::uint64_t seed = 0;
  std::string wrapper;  // "base" or a counterexample name
  std::array<AxiomTest, 4> tests;
};

struct MinimalityResult {
  std::vector<MinimalityRow> rows;
  // True when every wrapper fails exactly its own test on every seed.
  bool diagonal = false;
};

// Fixture: f = w.x with w_0 = w_1 over d features, pair (0, 1) with the
// collapsed companion P_{-1} w. Throws if the base fails a test.
MinimalityResult run_minimality_suite(const MinimalityConfig& cfg,
                                      const std::string& base = "GradientOnly");

// ---- single report --------------------------------------------------------

struct ScoreConfig {
  std::string explainer = "GradTimesInput";
  std::size_t d = 4;
  std::size_t n = 500;
  std::uint64_t seed = 7;
  std::size_t hidden = 16;
  std::vector<Component> components = {Component::kS, Component::kR, Component::kT,
                                       Component::kM, Component::kD};
  double sigma = 0.1;
  double shift = 0.2;
  std::size_t horizon = 50;
  AggregatorKind aggregator = UniformMean{};
  EriConfig eri;
};

EriReport run_score(const ScoreConfig& cfg);

}  // namespace eri::bench

#endif  // ERI_BENCH_EXPERIMENTS_HPP_
