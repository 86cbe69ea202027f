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

#include "eri/dependence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eri/error.hpp"
#include "eri/rng.hpp"

namespace eri {
namespace {

constexpr std::size_t kMedianSampleCap = 1000;

struct JointCode {
  std::vector<std::uint32_t> code;
  std::size_t cells = 1;
};

// Joint code of several discretized columns (mixed radix).
JointCode combine(const std::vector<std::vector<std::uint32_t>>& cols, std::size_t radix) {
  JointCode out;
  const std::size_t n = cols.empty() ? 0 : cols.front().size();
  out.code.assign(n, 0);
  for (const auto& c : cols) {
    for (std::size_t r = 0; r < n; ++r) {
      out.code[r] = static_cast<std::uint32_t>(out.code[r] * radix + c[r]);
    }
    out.cells *= radix;
  }
  return out;
}

// Plug-in entropy in nats. Cell counts are dense; the sparsity guard keeps
// `cells` small.
double entropy(const JointCode& joint) {
  std::vector<std::size_t> counts(joint.cells, 0);
  for (auto c : joint.code) ++counts[c];
  const double n = static_cast<double>(joint.code.size());
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log(p);
  }
  return h;
}

// I(X; Y | Z) from discretized columns.
double cmi_codes(const std::vector<std::vector<std::uint32_t>>& bz,
                 const std::vector<std::uint32_t>& bx, const std::vector<std::uint32_t>& by,
                 std::size_t radix) {
  auto xz = bz;
  xz.push_back(bx);
  auto yz = bz;
  yz.push_back(by);
  auto xyz = xz;
  xyz.push_back(by);
  const double h_z = bz.empty() ? 0.0 : entropy(combine(bz, radix));
  const double r = entropy(combine(xz, radix)) + entropy(combine(yz, radix)) -
                   entropy(combine(xyz, radix)) - h_z;
  return std::max(0.0, r);
}

void check_cells(std::size_t bins, std::size_t columns, const char* what) {
  double cells = 1.0;
  for (std::size_t k = 0; k < columns; ++k) cells *= static_cast<double>(bins);
  if (cells > static_cast<double>(kMaxJointCells)) {
    throw DomainError(std::string(what) + ": " + std::to_string(columns) +
                      " columns at " + std::to_string(bins) +
                      " bins exceed the histogram sparsity guard; use coarser bins");
  }
}

std::vector<std::vector<std::uint32_t>> discretize_all(
    const std::vector<std::vector<double>>& cols, std::size_t n, const BinningSpec& spec) {
  std::vector<std::vector<std::uint32_t>> out;
  for (const auto& c : cols) {
    require_size(c.size(), n, "dependence column");
    out.push_back(discretize(c, spec));
  }
  return out;
}

double gaussian(double a, double b, double inv_two_s2) {
  const double d = a - b;
  return std::exp(-d * d * inv_two_s2);
}

}  // namespace

void BinningSpec::validate() const {
  if (bins < 2) throw ConfigError("binning needs bins >= 2");
}

std::vector<std::uint32_t> discretize(std::span<const double> v, const BinningSpec& spec) {
  spec.validate();
  if (v.empty()) throw DomainError("cannot discretize an empty column");
  for (double x : v) {
    if (!std::isfinite(x)) throw DomainError("non-finite sample in dependence column");
  }
  const auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  std::vector<std::uint32_t> out(v.size());
  if (spec.strategy == BinningStrategy::kEqualWidth) {
    if (hi == lo) return out;
    const double width = (hi - lo) / static_cast<double>(spec.bins);
    for (std::size_t r = 0; r < v.size(); ++r) {
      const auto b = static_cast<std::size_t>((v[r] - lo) / width);
      out[r] = static_cast<std::uint32_t>(std::min(b, spec.bins - 1));
    }
    return out;
  }
  if (hi == lo) {
    throw DomainError("constant column cannot be binned by equal frequency");
  }
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> cuts;
  for (std::size_t k = 1; k < spec.bins; ++k) {
    double c = sorted[k * sorted.size() / spec.bins];
    // A cut at the minimum would leave bin 0 empty; move it to the next value.
    if (c == lo) c = *std::upper_bound(sorted.begin(), sorted.end(), lo);
    if (cuts.empty() || c > cuts.back()) cuts.push_back(c);
  }
  for (std::size_t r = 0; r < v.size(); ++r) {
    out[r] = static_cast<std::uint32_t>(
        std::upper_bound(cuts.begin(), cuts.end(), v[r]) - cuts.begin());
  }
  return out;
}

double mutual_information(std::span<const double> x, std::span<const double> y,
                          const BinningSpec& spec) {
  require_size(y.size(), x.size(), "mutual information sample");
  if (x.size() < spec.bins) throw DomainError("mutual information needs n >= bins");
  const auto bx = discretize(x, spec);
  const auto by = discretize(y, spec);
  const auto cx = combine({bx}, spec.bins);
  const auto cy = combine({by}, spec.bins);
  const auto cxy = combine({bx, by}, spec.bins);
  return std::max(0.0, entropy(cx) + entropy(cy) - entropy(cxy));
}

double joint_mutual_information(std::span<const double> y,
                                const std::vector<std::vector<double>>& block,
                                const BinningSpec& spec) {
  if (block.empty()) throw DomainError("joint mutual information needs a column");
  check_cells(spec.bins, block.size(), "joint mutual information");
  if (y.size() < spec.bins) throw DomainError("mutual information needs n >= bins");
  const auto bs = discretize_all(block, y.size(), spec);
  const auto by = discretize(y, spec);
  const auto cs = combine(bs, spec.bins);
  auto all = bs;
  all.push_back(by);
  return std::max(0.0, entropy(cs) + entropy(combine({by}, spec.bins)) -
                           entropy(combine(all, spec.bins)));
}

double conditional_mutual_information(std::span<const double> x, std::span<const double> y,
                                      const std::vector<std::vector<double>>& z,
                                      const BinningSpec& spec) {
  require_size(y.size(), x.size(), "conditional mutual information sample");
  if (z.empty()) return mutual_information(x, y, spec);
  check_cells(spec.bins, z.size(), "conditional mutual information");
  if (x.size() < spec.bins) throw DomainError("mutual information needs n >= bins");
  return cmi_codes(discretize_all(z, x.size(), spec), discretize(x, spec), discretize(y, spec),
                   spec.bins);
}

void KernelSpec::validate() const {
  if (bandwidth && !(*bandwidth > 0.0 && std::isfinite(*bandwidth))) {
    throw ConfigError("kernel bandwidth must be positive");
  }
}

double median_heuristic_bandwidth(std::span<const double> v) {
  const std::size_t m = std::min(v.size(), kMedianSampleCap);
  std::vector<double> dists;
  dists.reserve(m * (m - 1) / 2);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) dists.push_back(std::abs(v[a] - v[b]));
  }
  if (dists.empty()) {
    log_warning("median heuristic on fewer than two samples; using bandwidth 1.0");
    return 1.0;
  }
  auto mid = dists.begin() + static_cast<std::ptrdiff_t>(dists.size() / 2);
  std::nth_element(dists.begin(), mid, dists.end());
  const double med = *mid;
  if (!(med > 0.0)) {
    log_warning("median pairwise distance is zero; using bandwidth 1.0");
    return 1.0;
  }
  return med;
}

double hsic(std::span<const double> x, std::span<const double> y, const KernelSpec& spec) {
  spec.validate();
  require_size(y.size(), x.size(), "HSIC sample");
  const std::size_t n = x.size();
  if (n < 4) throw DomainError("HSIC needs n >= 4");
  const double sx = spec.bandwidth ? *spec.bandwidth : median_heuristic_bandwidth(x);
  const double sy = spec.bandwidth ? *spec.bandwidth : median_heuristic_bandwidth(y);
  const double ix = 1.0 / (2.0 * sx * sx);
  const double iy = 1.0 / (2.0 * sy * sy);
  // tr(KHLH) = sum K.*L - (2/n) (K1).(L1) + (1'K1)(1'L1)/n^2.
  std::vector<double> krow(n, 0.0), lrow(n, 0.0);
  double kl = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const double k = gaussian(x[a], x[b], ix);
      const double l = gaussian(y[a], y[b], iy);
      krow[a] += k;
      lrow[a] += l;
      kl += k * l;
    }
  }
  double cross = 0.0, ksum = 0.0, lsum = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    cross += krow[a] * lrow[a];
    ksum += krow[a];
    lsum += lrow[a];
  }
  const double dn = static_cast<double>(n);
  const double trace = kl - 2.0 * cross / dn + ksum * lsum / (dn * dn);
  return std::max(0.0, trace / (dn * dn));
}

double pearson_correlation(std::span<const double> a, std::span<const double> b) {
  require_size(b.size(), a.size(), "correlation sample");
  const std::size_t n = a.size();
  if (n < 2) throw DomainError("correlation needs n >= 2");
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

void McirConfig::validate(std::size_t d) const {
  binning.validate();
  if (d < 2) throw DomainError("MCIR needs at least two features");
  if (neighborhood < 1 || neighborhood >= d) {
    throw ConfigError("MCIR neighborhood size must lie in [1, d)");
  }
  if (!(epsilon > 0.0)) throw ConfigError("MCIR epsilon must be positive");
}

std::vector<std::size_t> correlation_neighborhood(const Matrix& x, std::size_t i,
                                                  std::size_t k) {
  const std::size_t d = x.cols();
  if (i >= d) throw DimensionError("feature index out of range");
  const auto xi = x.column(i);
  std::vector<std::pair<double, std::size_t>> scored;
  for (std::size_t j = 0; j < d; ++j) {
    if (j == i) continue;
    scored.emplace_back(std::abs(pearson_correlation(xi, x.column(j))), j);
  }
  // Highest correlation first; lower index breaks ties.
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < std::min(k, scored.size()); ++m) out.push_back(scored[m].second);
  return out;
}

std::vector<double> mcir(const Dataset& data, const McirConfig& cfg) {
  data.validate();
  const std::size_t d = data.features();
  cfg.validate(d);
  check_cells(cfg.binning.bins, cfg.neighborhood + 1, "MCIR");
  if (data.size() < cfg.binning.bins * cfg.binning.bins) {
    throw DomainError("MCIR needs at least bins^2 samples");
  }
  const auto by = discretize(data.y, cfg.binning);
  std::vector<double> out(d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto xi = data.x.column(i);
    std::vector<std::vector<double>> phi;
    for (std::size_t j : correlation_neighborhood(data.x, i, cfg.neighborhood)) {
      phi.push_back(data.x.column(j));
    }
    const auto bz = discretize_all(phi, data.size(), cfg.binning);
    const auto bx = discretize(xi, cfg.binning);
    const double cmi = cmi_codes(bz, bx, by, cfg.binning.bins);
    // Keep the numerator only if it beats every shuffled-target replicate.
    bool significant = cmi > 0.0;
    std::vector<std::uint32_t> shuffled = by;
    for (std::size_t s = 0; significant && s < cfg.null_permutations; ++s) {
      Rng rng(cfg.seed, StreamTag::kPermutation, mix_seed(i, s));
      rng.shuffle(std::span<std::uint32_t>(shuffled));
      if (cmi_codes(bz, bx, shuffled, cfg.binning.bins) >= cmi) significant = false;
    }
    const double numerator = significant ? cmi : 0.0;
    auto block = phi;
    block.push_back(xi);
    const double joint = joint_mutual_information(data.y, block, cfg.binning);
    out[i] = std::clamp(numerator / (numerator + joint + cfg.epsilon), 0.0, 1.0);
  }
  return out;
}

ExplainerPtr mcir_as_explainer(const Dataset& data, const McirConfig& cfg) {
  return std::make_shared<ConstantExplainer>(mcir(data, cfg), "MCIR");
}

std::string to_string(DependenceMeasure m) {
  return m == DependenceMeasure::kMutualInformation ? "MI" : "HSIC";
}

LocalDependence::LocalDependence(DependenceMeasure measure, double sigma,
                                 std::size_t samples, std::uint64_t seed,
                                 BinningSpec binning)
    : measure_(measure), sigma_(sigma), samples_(samples), seed_(seed), binning_(binning) {
  if (!(sigma_ > 0.0)) throw ConfigError("local dependence sigma must be positive");
  if (samples_ < std::max<std::size_t>(4, binning_.bins)) {
    throw ConfigError("local dependence needs more samples");
  }
  binning_.validate();
}

std::string LocalDependence::name() const { return to_string(measure_); }

AttributionVector LocalDependence::explain(const NeuralModel& model, std::span<const double> x,
                                           const ExplainContext&) const {
  const std::size_t d = x.size();
  std::vector<std::vector<double>> cols(d, std::vector<double>(samples_));
  std::vector<double> out_y(samples_);
  std::vector<double> point(d);
  for (std::size_t k = 0; k < samples_; ++k) {
    Rng rng(seed_, StreamTag::kSampling, k);
    for (std::size_t i = 0; i < d; ++i) {
      point[i] = x[i] + sigma_ * rng.normal();
      cols[i][k] = point[i];
    }
    out_y[k] = model.forward(point);
  }
  std::vector<double> scores(d, 0.0);
  const bool constant_output =
      std::all_of(out_y.begin(), out_y.end(), [&](double v) { return v == out_y[0]; });
  if (constant_output) return AttributionVector(std::move(scores));
  for (std::size_t i = 0; i < d; ++i) {
    scores[i] = measure_ == DependenceMeasure::kMutualInformation
                    ? mutual_information(cols[i], out_y, binning_)
                    : hsic(cols[i], out_y, KernelSpec{});
  }
  return AttributionVector(std::move(scores));
}

ExplainerPtr LocalDependence::collapsed(const CollapsePair&) const {
  return std::make_shared<LocalDependence>(measure_, sigma_, samples_, seed_, binning_);
}

}  // namespace eri
