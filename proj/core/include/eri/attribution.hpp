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

#ifndef ERI_ATTRIBUTION_HPP_
#define ERI_ATTRIBUTION_HPP_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace eri {

// Per-feature contribution scores produced by an explainer for one input.
// Non-empty, every entry finite, immutable once built.
class AttributionVector {
 public:
  explicit AttributionVector(std::vector<double> values);
  AttributionVector(std::initializer_list<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }

  // Euclidean norm.
  double norm() const;

  bool operator==(const AttributionVector&) const = default;

 private:
  std::vector<double> values_;
};

std::string to_string(const AttributionVector& v);

}  // namespace eri

#endif  // ERI_ATTRIBUTION_HPP_
