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

#ifndef ERI_BENCH_REPORT_HPP_
#define ERI_BENCH_REPORT_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "eri/bench/experiments.hpp"
#include "eri/eri.hpp"

namespace eri::bench {

std::string library_version();

// Shortest decimal text that round-trips to the same double.
std::string format_number(double v);

using Cell = std::variant<std::string, double, std::int64_t>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

// RFC 4180 style, '\n' line endings.
std::string to_csv(const Table& table);

struct Manifest {
  std::string subcommand;
  std::string config_hash;
  std::vector<std::uint64_t> seeds;
  std::vector<std::pair<std::string, std::string>> config;
};

std::string manifest_to_json(const Manifest& manifest);

// {"manifest": {...}, "columns": [...], "rows": [{...}, ...]}
std::string to_json(const Table& table, const Manifest& manifest);

Table collapse_table(const CollapseCurveResult& result);
Table decoupling_table(const std::vector<DecouplingRow>& rows);
Table scm_table(const std::vector<ScmRow>& rows);
Table minimality_table(const MinimalityResult& result);
Table report_table(const EriReport& report);

// Report JSON also carries the aggregate and minimum when present.
std::string report_to_json(const EriReport& report, const Manifest& manifest);

void write_file(const std::string& path, const std::string& content);

}  // namespace eri::bench

#endif  // ERI_BENCH_REPORT_HPP_
