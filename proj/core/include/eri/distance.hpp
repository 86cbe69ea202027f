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

#ifndef ERI_DISTANCE_HPP_
#define ERI_DISTANCE_HPP_

#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "eri/attribution.hpp"

namespace eri {

struct L1Distance {};
struct L2Distance {};
// 1 - cos(a, b); defined as 1 when either side is the zero vector.
struct CosineDistance {};
// Max-coordinate metric.
struct LInfDistance {};
// min(||a - b||_2, cap); bounded samples for Hoeffding intervals.
struct ClampedL2Distance {
  double cap = 1.0;
};

using DistanceKind = std::variant<L1Distance, L2Distance, CosineDistance,
                                  ClampedL2Distance, LInfDistance>;

double distance(std::span<const double> a, std::span<const double> b,
                const DistanceKind& kind);
double distance(const AttributionVector& a, const AttributionVector& b,
                const DistanceKind& kind);

// True when every sample of this distance is guaranteed to lie in [0, 1].
bool bounded_in_unit_interval(const DistanceKind& kind);

// "l1", "l2", "cosine", "linf", "clamped-l2" or "clamped-l2:<cap>".
std::string to_string(const DistanceKind& kind);
DistanceKind parse_distance(std::string_view text);

}  // namespace eri

#endif  // ERI_DISTANCE_HPP_
