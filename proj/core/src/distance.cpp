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

#include "eri/distance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "eri/error.hpp"
#include "overloaded.hpp"

namespace eri {
namespace {

using internal::Overloaded;

double l2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

double distance(std::span<const double> a, std::span<const double> b,
                const DistanceKind& kind) {
  require_size(b.size(), a.size(), "distance operand");
  return std::visit(
      Overloaded{
          [&](const L1Distance&) {
            double s = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
            return s;
          },
          [&](const L2Distance&) { return l2(a, b); },
          [&](const LInfDistance&) {
            double m = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) {
              m = std::max(m, std::abs(a[i] - b[i]));
            }
            return m;
          },
          [&](const ClampedL2Distance& c) { return std::min(l2(a, b), c.cap); },
          [&](const CosineDistance&) {
            double dot = 0.0, na = 0.0, nb = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) {
              dot += a[i] * b[i];
              na += a[i] * a[i];
              nb += b[i] * b[i];
            }
            if (na == 0.0 || nb == 0.0) return 1.0;
            const double cos = dot / (std::sqrt(na) * std::sqrt(nb));
            return std::clamp(1.0 - cos, 0.0, 2.0);
          },
      },
      kind);
}

double distance(const AttributionVector& a, const AttributionVector& b,
                const DistanceKind& kind) {
  return distance(a.values(), b.values(), kind);
}

bool bounded_in_unit_interval(const DistanceKind& kind) {
  const auto* c = std::get_if<ClampedL2Distance>(&kind);
  return c != nullptr && c->cap <= 1.0;
}

std::string to_string(const DistanceKind& kind) {
  return std::visit(
      Overloaded{
          [](const L1Distance&) -> std::string { return "l1"; },
          [](const L2Distance&) -> std::string { return "l2"; },
          [](const CosineDistance&) -> std::string { return "cosine"; },
          [](const LInfDistance&) -> std::string { return "linf"; },
          [](const ClampedL2Distance& c) -> std::string {
            if (c.cap == 1.0) return "clamped-l2";
            char buf[32];
            const auto res = std::to_chars(buf, buf + sizeof buf, c.cap);
            return "clamped-l2:" + std::string(buf, res.ptr);
          },
      },
      kind);
}

DistanceKind parse_distance(std::string_view text) {
  if (text == "l1") return L1Distance{};
  if (text == "l2") return L2Distance{};
  if (text == "cosine") return CosineDistance{};
  if (text == "linf") return LInfDistance{};
  if (text == "clamped-l2") return ClampedL2Distance{};
  constexpr std::string_view kPrefix = "clamped-l2:";
  if (text.starts_with(kPrefix)) {
    const std::string cap_text(text.substr(kPrefix.size()));
    double cap = 0.0;
    try {
      cap = std::stod(cap_text);
    } catch (const std::exception&) {
      throw ConfigError("bad clamped-l2 cap: " + cap_text);
    }
    if (!(cap > 0.0) || !std::isfinite(cap)) {
      throw ConfigError("clamped-l2 cap must be positive");
    }
    return ClampedL2Distance{cap};
  }
  throw ConfigError("unknown distance: " + std::string(text));
}

}  // namespace eri
