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

#ifndef ERI_ERI_HPP_
#define ERI_ERI_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "eri/aggregate.hpp"
#include "eri/attribution.hpp"
#include "eri/dataset.hpp"
#include "eri/distance.hpp"
#include "eri/drift.hpp"
#include "eri/explainers.hpp"
#include "eri/model.hpp"
#include "eri/transforms.hpp"

namespace eri {

std::vector<std::uint64_t> default_seeds();

struct EriConfig {
  DistanceKind distance = L2Distance{};
  std::size_t mc_samples = 500;
  std::vector<std::uint64_t> seeds = default_seeds();
  // Divide each drift sample by ||reference|| + normalize_epsilon.
  bool normalize = false;
  double normalize_epsilon = 1e-9;
  double confidence = 0.95;
  std::size_t workers = 1;
  // Checkpoint index reported to explainers outside ERI-M.
  std::size_t checkpoint_index = 0;

  void validate() const;

  // Hoeffding radii are only valid for samples bounded in [0, 1].
  bool bounded_samples() const;
};

// Stable FNV-1a digest of every result-affecting field (not `workers`).
std::string config_hash(const EriConfig& cfg);

// ---- ERI-S ----------------------------------------------------------------

// Drift samples are pooled over cfg.seeds, n per seed. Draw i of run seed s
// uses sample_perturbation(law with seed mix_seed(law.seed, s), d, i).
EriScore eri_s(const NeuralModel& model, const Explainer& explainer,
               std::span<const double> x, const PerturbationLaw& law, const EriConfig& cfg);

// Every pooled drift sample, seed-major.
std::vector<double> eri_s_samples(const NeuralModel& model, const Explainer& explainer,
                                  std::span<const double> x, const PerturbationLaw& law,
                                  const EriConfig& cfg);

// ---- ERI-R ----------------------------------------------------------------

// Pair (keep, remove), alpha ~ U[alpha0, 1). Each sample injects redundancy
// into x, then compares P_{-remove} E(x~) with E' on collapse_input(x~).
struct RedundancySpec {
  std::size_t keep = 0;
  std::size_t remove = 1;
  double alpha0 = 0.5;
  std::uint64_t seed = 0;

  void validate(std::size_t d) const;
};

// `companion` is the model over d-1 inputs. When it is null the explainer
// must not read the model (oracle-collapse mode).
EriScore eri_r(const NeuralModel& model, const Explainer& explainer,
               std::span<const double> x, const RedundancySpec& spec,
               const NeuralModel* companion, const EriConfig& cfg);

std::vector<double> eri_r_samples(const NeuralModel& model, const Explainer& explainer,
                                  std::span<const double> x, const RedundancySpec& spec,
                                  const NeuralModel* companion, const EriConfig& cfg);

// Per-alpha mean drift with alpha held fixed at each grid value.
std::vector<DriftEstimate> eri_r_curve(const NeuralModel& model, const Explainer& explainer,
                                       std::span<const double> x, const RedundancySpec& spec,
                                       std::span<const double> alphas,
                                       const NeuralModel* companion, const EriConfig& cfg);

// ---- ERI-T ----------------------------------------------------------------

// Mean consecutive drift; needs T >= 2.
EriScore eri_t(const std::vector<AttributionVector>& explanations, const EriConfig& cfg);

// Explains each row of `sequence` in order, retaining only two explanations.
EriScore eri_t(const NeuralModel& model, const Explainer& explainer, const Matrix& sequence,
               const EriConfig& cfg);

std::vector<double> eri_t_samples(const std::vector<AttributionVector>& explanations,
                                  const EriConfig& cfg);

// ---- ERI-M ----------------------------------------------------------------

// Checkpoint k is explained with checkpoint_index = k.
EriScore eri_m(const std::vector<Checkpoint>& checkpoints, const Explainer& explainer,
               std::span<const double> x, const EriConfig& cfg);

std::vector<double> eri_m_samples(const std::vector<Checkpoint>& checkpoints,
                                  const Explainer& explainer, std::span<const double> x,
                                  const EriConfig& cfg);

// ---- ERI-D ----------------------------------------------------------------

// n i.i.d. draws from N(mean, sigma^2 I); the run seed is mixed into `seed`.
struct GaussianSource {
  std::vector<double> mean;
  double sigma = 1.0;
  std::size_t n = 500;
  std::uint64_t seed = 0;
};
// A fixed sample set; identical for every run seed.
struct MatrixSource {
  Matrix rows;
};
using SampleSource = std::variant<GaussianSource, MatrixSource>;

Matrix materialize(const SampleSource& source, std::uint64_t run_seed);

// Pooled over seeds: mean over runs of d(mean_P E, mean_Q E).
EriScore eri_d(const NeuralModel& model, const Explainer& explainer, const SampleSource& p,
               const SampleSource& q, const EriConfig& cfg);

// One drift per run seed.
std::vector<double> eri_d_samples(const NeuralModel& model, const Explainer& explainer,
                                  const SampleSource& p, const SampleSource& q,
                                  const EriConfig& cfg);

// ---- report ---------------------------------------------------------------

struct ReportContext {
  std::optional<std::vector<double>> x;
  std::optional<PerturbationLaw> law;
  std::optional<RedundancySpec> redundancy;
  std::optional<NeuralModel> companion;
  std::optional<Matrix> sequence;
  std::optional<std::vector<Checkpoint>> checkpoints;
  std::optional<std::pair<SampleSource, SampleSource>> shift;
};

struct EriReport {
  std::map<Component, EriScore> components;
  std::optional<std::pair<AggregatorKind, double>> aggregate;
  std::optional<double> minimum;
  std::string config_hash;
  std::string explainer_name;

  ComponentScores scores() const;
};

EriReport eri_report(const NeuralModel& model, const Explainer& explainer,
                     const ReportContext& context, const std::set<Component>& requested,
                     const EriConfig& cfg,
                     const std::optional<AggregatorKind>& aggregator = std::nullopt);

}  // namespace eri

#endif  // ERI_ERI_HPP_
