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

#ifndef ERI_DEPENDENCE_HPP_
#define ERI_DEPENDENCE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eri/dataset.hpp"
#include "eri/explainers.hpp"

namespace eri {

enum class BinningStrategy { kEqualWidth, kEqualFrequency };

struct BinningSpec {
  std::size_t bins = 8;
  BinningStrategy strategy = BinningStrategy::kEqualFrequency;

  void validate() const;
};

// Largest joint cell count allowed for a conditioning or joint block.
inline constexpr std::size_t kMaxJointCells = 64;

// Bin index per sample. Equal-frequency cut points are sample quantiles with
// duplicates merged, so tied values always share a bin. A constant column
// is rejected under equal-frequency binning.
std::vector<std::uint32_t> discretize(std::span<const double> v, const BinningSpec& spec);

// Plug-in mutual information in nats, clamped at 0.
double mutual_information(std::span<const double> x, std::span<const double> y,
                          const BinningSpec& spec);

// I(Y; X_S) for a block of columns S treated as one joint variable.
double joint_mutual_information(std::span<const double> y,
                                const std::vector<std::vector<double>>& block,
                                const BinningSpec& spec);

// I(X; Y | Z) over the binned conditioning cells, clamped at 0.
double conditional_mutual_information(std::span<const double> x, std::span<const double> y,
                                      const std::vector<std::vector<double>>& z,
                                      const BinningSpec& spec);

// Gaussian kernel; bandwidth nullopt selects the median heuristic.
struct KernelSpec {
  std::optional<double> bandwidth;

  void validate() const;
};

// Median pairwise distance over at most the first 1000 samples. Falls back to
// 1.0 with a warning when the median is zero.
double median_heuristic_bandwidth(std::span<const double> v);

// Biased V-statistic (1/n^2) tr(KHLH), computed in O(n) memory.
double hsic(std::span<const double> x, std::span<const double> y, const KernelSpec& spec);

double pearson_correlation(std::span<const double> a, std::span<const double> b);

struct McirConfig {
  std::size_t neighborhood = 1;
  double epsilon = 1e-9;
  BinningSpec binning;
  // The conditional term counts only if it exceeds all of these
  // target-shuffled replicates (one-sided p < 1 / (n + 1)); 0 disables.
  std::size_t null_permutations = 99;
  std::uint64_t seed = 0;

  void validate(std::size_t d) const;
};

// Indices of the `k` features most correlated (absolute Pearson) with i.
std::vector<std::size_t> correlation_neighborhood(const Matrix& x, std::size_t i,
                                                  std::size_t k);

// Per-feature score in [0, 1]: I(Y; X_i | X_phi) / (that + I(Y; X_phi u X_i) + eps).
std::vector<double> mcir(const Dataset& data, const McirConfig& cfg);

// The dataset-global MCIR vector as an x- and model-insensitive explainer.
ExplainerPtr mcir_as_explainer(const Dataset& data, const McirConfig& cfg);

enum class DependenceMeasure { kMutualInformation, kHsic };

std::string to_string(DependenceMeasure m);

// Instance-level dependence: draws `samples` Gaussian neighbours of x, then
// scores each feature by its dependence with the model output over them.
class LocalDependence final : public Explainer {
 public:
  LocalDependence(DependenceMeasure measure, double sigma, std::size_t samples,
                  std::uint64_t seed, BinningSpec binning = {});
  std::string name() const override;
  AttributionVector explain(const NeuralModel& model, std::span<const double> x,
                            const ExplainContext& ctx) const override;
  ExplainerPtr collapsed(const CollapsePair& pair) const override;
  using Explainer::explain;

 private:
  DependenceMeasure measure_;
  double sigma_;
  std::size_t samples_;
  std::uint64_t seed_;
  BinningSpec binning_;
};

}  // namespace eri

#endif  // ERI_DEPENDENCE_HPP_
