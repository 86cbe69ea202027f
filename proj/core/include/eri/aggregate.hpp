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

#ifndef ERI_AGGREGATE_HPP_
#define ERI_AGGREGATE_HPP_

#include <map>
#include <string>
#include <string_view>
#include <variant>

namespace eri {

// Reliability axes.
enum class Component { kS, kR, kT, kM, kD };

std::string to_string(Component c);
Component parse_component(std::string_view text);

using ComponentScores = std::map<Component, double>;

struct UniformMean {};
// Weights must cover exactly the present components and sum to 1.
struct WeightedMean {
  std::map<Component, double> weights;
};
struct MinimumAggregator {};
// Requires nonnegative scores.
struct GeometricMean {};

using AggregatorKind =
    std::variant<UniformMean, WeightedMean, MinimumAggregator, GeometricMean>;

double aggregate(const ComponentScores& components, const AggregatorKind& kind);

std::string to_string(const AggregatorKind& kind);
AggregatorKind parse_aggregator(std::string_view text);

}  // namespace eri

#endif  // ERI_AGGREGATE_HPP_
