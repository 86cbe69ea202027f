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

#ifndef ERI_ERROR_HPP_
#define ERI_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace eri {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Vector or matrix shapes that do not line up.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// An argument outside the documented domain (negative drift, bins < 2, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Non-finite values produced during a computation (diverged training, ...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Malformed configuration or serialized input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Throws DimensionError naming `what` when `got != expected`.
void require_size(std::size_t got, std::size_t expected, const char* what);

// Logs a non-fatal warning to std::clog.
void log_warning(const std::string& message);

}  // namespace eri

#endif  // ERI_ERROR_HPP_
