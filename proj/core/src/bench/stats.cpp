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

#include "eri/bench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eri/dependence.hpp"
#include "eri/error.hpp"

namespace eri::bench {

std::vector<double> average_ranks(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

std::optional<double> spearman(std::span<const double> a, std::span<const double> b) {
  require_size(b.size(), a.size(), "spearman sample");
  if (a.size() < 2) return std::nullopt;
  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  const bool flat_a = std::all_of(ra.begin(), ra.end(), [&](double r) { return r == ra[0]; });
  const bool flat_b = std::all_of(rb.begin(), rb.end(), [&](double r) { return r == rb[0]; });
  if (flat_a || flat_b) return std::nullopt;
  return pearson_correlation(ra, rb);
}

std::optional<double> kendall_tau_b(std::span<const double> a, std::span<const double> b) {
  require_size(b.size(), a.size(), "kendall sample");
  const std::size_t n = a.size();
  double concordant = 0.0, discordant = 0.0, ties_a = 0.0, ties_b = 0.0, pairs = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      pairs += 1.0;
      const double da = a[i] - a[j];
      const double db = b[i] - b[j];
      if (da == 0.0) ties_a += 1.0;
      if (db == 0.0) ties_b += 1.0;
      if (da == 0.0 || db == 0.0) continue;
      if ((da > 0.0) == (db > 0.0)) {
        concordant += 1.0;
      } else {
        discordant += 1.0;
      }
    }
  }
  const double denom = std::sqrt((pairs - ties_a) * (pairs - ties_b));
  if (!(denom > 0.0)) return std::nullopt;
  return (concordant - discordant) / denom;
}

std::vector<double> solve_linear_system(Matrix a, std::vector<double> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DimensionError("linear system matrix must be square");
  require_size(b.size(), n, "linear system right-hand side");
  double scale = 0.0;
  for (double v : a.data()) scale = std::max(scale, std::abs(v));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    }
    if (!(std::abs(a(pivot, col)) > 1e-13 * std::max(scale, 1.0))) {
      throw NumericalError("singular linear system");
    }
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(col, c), a(pivot, c));
      std::swap(b[col], b[pivot]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a(r, col) / a(col, col);
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t c = r + 1; c < n; ++c) s -= a(r, c) * x[c];
    x[r] = s / a(r, r);
  }
  return x;
}

double LinearFit::predict(std::span<const double> row) const {
  require_size(row.size(), coefficients.size(), "linear fit input");
  double s = intercept;
  for (std::size_t k = 0; k < row.size(); ++k) s += coefficients[k] * row[k];
  return s;
}

LinearFit fit_linear(const Dataset& data, const std::vector<std::size_t>& columns,
                     double ridge) {
  data.validate();
  const std::size_t n = data.size();
  const std::size_t p = columns.size();
  if (n == 0) throw DomainError("cannot fit on an empty dataset");
  for (std::size_t c : columns) {
    if (c >= data.features()) throw DimensionError("fit column out of range");
  }
  std::vector<double> mean_x(p, 0.0);
  double mean_y = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < p; ++k) mean_x[k] += data.x(r, columns[k]);
    mean_y += data.y[r];
  }
  for (double& m : mean_x) m /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  LinearFit fit;
  if (p > 0) {
    Matrix xtx(p, p);
    std::vector<double> xty(p, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t a = 0; a < p; ++a) {
        const double va = data.x(r, columns[a]) - mean_x[a];
        xty[a] += va * (data.y[r] - mean_y);
        for (std::size_t b = 0; b < p; ++b) xtx(a, b) += va * (data.x(r, columns[b]) - mean_x[b]);
      }
    }
    for (std::size_t a = 0; a < p; ++a) xtx(a, a) += ridge * static_cast<double>(n);
    fit.coefficients = solve_linear_system(std::move(xtx), std::move(xty));
  }
  fit.intercept = mean_y;
  for (std::size_t k = 0; k < p; ++k) fit.intercept -= fit.coefficients[k] * mean_x[k];
  return fit;
}

double r_squared(const LinearFit& fit, const Dataset& data,
                 const std::vector<std::size_t>& columns) {
  data.validate();
  if (data.size() == 0) throw DomainError("cannot score an empty dataset");
  double mean_y = 0.0;
  for (double v : data.y) mean_y += v;
  mean_y /= static_cast<double>(data.size());
  double ss_res = 0.0, ss_tot = 0.0;
  std::vector<double> sub(columns.size());
  for (std::size_t r = 0; r < data.size(); ++r) {
    for (std::size_t k = 0; k < columns.size(); ++k) sub[k] = data.x(r, columns[k]);
    const double e = data.y[r] - fit.predict(sub);
    ss_res += e * e;
    ss_tot += (data.y[r] - mean_y) * (data.y[r] - mean_y);
  }
  if (!(ss_tot > 0.0)) throw DomainError("R^2 undefined for constant targets");
  return 1.0 - ss_res / ss_tot;
}

}  // namespace eri::bench
