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

#include "eri/attribution.hpp"

#include <cmath>
#include <sstream>

#include "eri/error.hpp"

namespace eri {

AttributionVector::AttributionVector(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) {
    throw DomainError("attribution vector must have at least one entry");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw DomainError("attribution entry " + std::to_string(i) +
                        " is not finite");
    }
  }
}

AttributionVector::AttributionVector(std::initializer_list<double> values)
    : AttributionVector(std::vector<double>(values)) {}

double AttributionVector::norm() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return std::sqrt(s);
}

std::string to_string(const AttributionVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i];
  }
  os << ')';
  return os.str();
}

}  // namespace eri
