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

#include "eri/collapse.hpp"

#include <cmath>
#include <string>

#include "eri/distance.hpp"
#include "eri/error.hpp"

namespace eri {

void CollapsePair::validate(std::size_t d) const {
  if (keep >= d || remove >= d) {
    throw DimensionError("collapse pair index out of range for d=" + std::to_string(d));
  }
  if (keep == remove) throw DomainError("collapse pair needs distinct features");
  if (!std::isfinite(alpha)) throw DomainError("collapse alpha must be finite");
}

std::vector<double> remove_coordinate(std::span<const double> v, std::size_t remove) {
  if (remove >= v.size()) throw DimensionError("coordinate index out of range");
  if (v.size() < 2) throw DimensionError("cannot remove the only coordinate");
  std::vector<double> out;
  out.reserve(v.size() - 1);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k != remove) out.push_back(v[k]);
  }
  return out;
}

std::vector<double> collapse_input(std::span<const double> x, const CollapsePair& pair) {
  pair.validate(x.size());
  std::vector<double> tmp(x.begin(), x.end());
  tmp[pair.keep] = x[pair.keep] * (1.0 + pair.alpha);
  return remove_coordinate(tmp, pair.remove);
}

AttributionVector collapse_explanation(const AttributionVector& e, std::size_t remove) {
  return AttributionVector(remove_coordinate(e.values(), remove));
}

std::vector<double> midpoint_merge(std::span<const double> v, std::size_t i,
                                   std::size_t j) {
  if (i >= v.size() || j >= v.size() || i == j) {
    throw DomainError("midpoint merge needs distinct valid indices");
  }
  std::vector<double> tmp(v.begin(), v.end());
  tmp[i] = 0.5 * (v[i] + v[j]);
  return remove_coordinate(tmp, j);
}

double midpoint_collapse_drift(const AttributionVector& e, std::size_t i, std::size_t j) {
  const auto merged = midpoint_merge(e.values(), i, j);
  const auto deleted = remove_coordinate(e.values(), j);
  return distance(std::span<const double>(deleted), std::span<const double>(merged),
                  LInfDistance{});
}

}  // namespace eri
