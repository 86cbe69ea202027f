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

#ifndef ERI_BENCH_CONFIG_HPP_
#define ERI_BENCH_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "eri/bench/experiments.hpp"
#include "eri/eri.hpp"

namespace eri::bench {

// Flat `key = value` text. '#' starts a comment; blank lines are ignored;
// list values are comma separated. Duplicate keys are an error.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::string_view text);
  static KeyValueConfig load(const std::string& path);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  const std::map<std::string, std::string>& entries() const { return entries_; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::size_t get_size(const std::string& key, std::size_t fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_doubles(const std::string& key,
                                  const std::vector<double>& fallback) const;
  std::vector<std::uint64_t> get_u64s(const std::string& key,
                                      const std::vector<std::uint64_t>& fallback) const;
  std::vector<std::string> get_strings(const std::string& key,
                                       const std::vector<std::string>& fallback) const;

  // Throws ConfigError naming the first key outside `allowed`.
  void require_known(const std::set<std::string>& allowed) const;

  // FNV-1a over the sorted entries, as 16 hex digits.
  std::string hash() const;

 private:
  std::map<std::string, std::string> entries_;
};

// Keys: distance, mc_samples, seeds, normalize, confidence, workers.
EriConfig eri_config_from(const KeyValueConfig& kv);
std::set<std::string> eri_config_keys();

CollapseCurveConfig collapse_config_from(const KeyValueConfig& kv);
DecouplingConfig decoupling_config_from(const KeyValueConfig& kv);
ScmConfig scm_config_from(const KeyValueConfig& kv);
// Also accepts `base`, the explainer name, which callers read themselves.
MinimalityConfig minimality_config_from(const KeyValueConfig& kv);
ScoreConfig score_config_from(const KeyValueConfig& kv);

// Fully resolved entries, defaults included; parsing them back yields the
// same config. Worker counts are left out since they never change results.
KeyValueConfig to_key_values(const EriConfig& cfg);
KeyValueConfig to_key_values(const CollapseCurveConfig& cfg);
KeyValueConfig to_key_values(const DecouplingConfig& cfg);
KeyValueConfig to_key_values(const ScmConfig& cfg);
KeyValueConfig to_key_values(const MinimalityConfig& cfg, const std::string& base);
KeyValueConfig to_key_values(const ScoreConfig& cfg);

}  // namespace eri::bench

#endif  // ERI_BENCH_CONFIG_HPP_
