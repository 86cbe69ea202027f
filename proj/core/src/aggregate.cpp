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

#include "eri/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eri/error.hpp"
#include "overloaded.hpp"

namespace eri {

using internal::Overloaded;

std::string to_string(Component c) {
  switch (c) {
    case Component::kS: return "S";
    case Component::kR: return "R";
    case Component::kT: return "T";
    case Component::kM: return "M";
    case Component::kD: return "D";
  }
  return "?";
}

Component parse_component(std::string_view text) {
  if (text == "S" || text == "s") return Component::kS;
  if (text == "R" || text == "r") return Component::kR;
  if (text == "T" || text == "t") return Component::kT;
  if (text == "M" || text == "m") return Component::kM;
  if (text == "D" || text == "d") return Component::kD;
  throw ConfigError("unknown ERI component: " + std::string(text));
}

double aggregate(const ComponentScores& components, const AggregatorKind& kind) {
  if (components.empty()) throw DomainError("aggregate needs at least one component");
  for (const auto& [c, v] : components) {
    if (!std::isfinite(v)) {
      throw DomainError("component " + to_string(c) + " is not finite");
    }
  }
  return std::visit(
      Overloaded{
          [&](const UniformMean&) {
            double s = 0.0;
            for (const auto& [c, v] : components) s += v;
            return s / static_cast<double>(components.size());
          },
          [&](const WeightedMean& w) {
            double total_weight = 0.0;
            double s = 0.0;
            if (w.weights.size() != components.size()) {
              throw DomainError("weighted mean needs one weight per component");
            }
            for (const auto& [c, v] : components) {
              const auto it = w.weights.find(c);
              if (it == w.weights.end()) {
                throw DomainError("no weight for component " + to_string(c));
              }
              if (it->second < 0.0) throw DomainError("weights must be nonnegative");
              total_weight += it->second;
              s += it->second * v;
            }
            if (std::abs(total_weight - 1.0) > 1e-12) {
              throw DomainError("weights must sum to 1");
            }
            return s;
          },
          [&](const MinimumAggregator&) {
            double m = components.begin()->second;
            for (const auto& [c, v] : components) m = std::min(m, v);
            return m;
          },
          [&](const GeometricMean&) {
            double log_sum = 0.0;
            for (const auto& [c, v] : components) {
              if (v < 0.0) {
                throw DomainError("geometric mean requires nonnegative scores");
              }
              if (v == 0.0) return 0.0;
              log_sum += std::log(v);
            }
            return std::exp(log_sum / static_cast<double>(components.size()));
          },
      },
      kind);
}

std::string to_string(const AggregatorKind& kind) {
  return std::visit(
      Overloaded{
          [](const UniformMean&) -> std::string { return "uniform"; },
          [](const MinimumAggregator&) -> std::string { return "min"; },
          [](const GeometricMean&) -> std::string { return "geometric"; },
          [](const WeightedMean& w) -> std::string {
            std::ostringstream os;
            os << "weighted";
            char sep = ':';
            for (const auto& [c, v] : w.weights) {
              os << sep << to_string(c) << '=' << v;
              sep = ',';
            }
            return os.str();
          },
      },
      kind);
}

AggregatorKind parse_aggregator(std::string_view text) {
  if (text == "uniform" || text == "mean") return UniformMean{};
  if (text == "min" || text == "minimum") return MinimumAggregator{};
  if (text == "geometric") return GeometricMean{};
  constexpr std::string_view kPrefix = "weighted:";
  if (text.starts_with(kPrefix)) {
    WeightedMean w;
    std::string rest(text.substr(kPrefix.size()));
    std::istringstream is(rest);
    std::string item;
    while (std::getline(is, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ConfigError("bad weight entry: " + item);
      try {
        w.weights[parse_component(item.substr(0, eq))] = std::stod(item.substr(eq + 1));
      } catch (const std::invalid_argument&) {
        throw ConfigError("bad weight value: " + item);
      }
    }
    return w;
  }
  throw ConfigError("unknown aggregator: " + std::string(text));
}

}  // namespace eri
