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

#ifndef ERI_COLLAPSE_HPP_
#define ERI_COLLAPSE_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "eri/attribution.hpp"

namespace eri {

// Feature `remove` is folded into feature `keep` with redundancy level alpha.
struct CollapsePair {
  std::size_t keep = 0;
  std::size_t remove = 1;
  double alpha = 1.0;

  void validate(std::size_t d) const;
};

// x_keep <- x_keep * (1 + alpha), then coordinate `remove` is deleted.
std::vector<double> collapse_input(std::span<const double> x, const CollapsePair& pair);

// Coordinate deletion P_{-j}.
AttributionVector collapse_explanation(const AttributionVector& e, std::size_t remove);
std::vector<double> remove_coordinate(std::span<const double> v, std::size_t remove);

// (v_i + v_j) / 2 stored at i, then j deleted.
std::vector<double> midpoint_merge(std::span<const double> v, std::size_t i,
                                   std::size_t j);

// Max-coordinate distance between e with j deleted and its midpoint merge;
// equals |e_i - e_j| / 2.
double midpoint_collapse_drift(const AttributionVector& e, std::size_t i, std::size_t j);

}  // namespace eri

#endif  // ERI_COLLAPSE_HPP_
