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

#include "eri/bench/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "eri/error.hpp"
#include "json.hpp"
#include "overloaded.hpp"

namespace eri::bench {
namespace {

using internal::Overloaded;
using nlohmann::ordered_json;

std::string cell_text(const Cell& c) {
  return std::visit(Overloaded{
                        [](const std::string& s) { return s; },
                        [](double v) { return format_number(v); },
                        [](std::int64_t v) { return std::to_string(v); },
                    },
                    c);
}

ordered_json cell_json(const Cell& c) {
  return std::visit(Overloaded{
                        [](const std::string& s) { return ordered_json(s); },
                        [](double v) {
                          return std::isfinite(v) ? ordered_json(v) : ordered_json(format_number(v));
                        },
                        [](std::int64_t v) { return ordered_json(v); },
                    },
                    c);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

ordered_json manifest_json(const Manifest& m) {
  ordered_json j;
  j["tool"] = "eri-bench";
  j["version"] = library_version();
  j["subcommand"] = m.subcommand;
  j["config_hash"] = m.config_hash;
  j["seeds"] = m.seeds;
  ordered_json cfg = ordered_json::object();
  for (const auto& [k, v] : m.config) cfg[k] = v;
  j["config"] = cfg;
  return j;
}

Cell optional_cell(const std::optional<double>& v) {
  if (v) return *v;
  return std::string("undefined");
}

std::int64_t as_int(std::uint64_t v) { return static_cast<std::int64_t>(v); }

}  // namespace

std::string library_version() { return ERI_VERSION; }

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string to_csv(const Table& table) {
  std::ostringstream os;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) os << ',';
    os << csv_escape(table.header[i]);
  }
  os << '\n';
  for (const auto& row : table.rows) {
    require_size(row.size(), table.header.size(), "table row");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << csv_escape(cell_text(row[i]));
    }
    os << '\n';
  }
  return os.str();
}

std::string manifest_to_json(const Manifest& manifest) {
  return manifest_json(manifest).dump(2) + "\n";
}

std::string to_json(const Table& table, const Manifest& manifest) {
  ordered_json j;
  j["manifest"] = manifest_json(manifest);
  j["columns"] = table.header;
  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json r;
    for (std::size_t i = 0; i < row.size(); ++i) r[table.header[i]] = cell_json(row[i]);
    rows.push_back(r);
  }
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

Table collapse_table(const CollapseCurveResult& result) {
  Table t{{"explainer", "alpha", "duplicate_score"}, {}};
  for (const auto& r : result.rows) t.rows.push_back({r.explainer, r.alpha, r.duplicate_score});
  return t;
}

Table decoupling_table(const std::vector<DecouplingRow>& rows) {
  Table t{{"explainer", "delta_s", "delta_r", "delta_t", "eri_t", "topk_r2"}, {}};
  for (const auto& r : rows) {
    t.rows.push_back({r.explainer, r.delta_s, r.delta_r, r.delta_t, r.eri_t, r.topk_r2});
  }
  return t;
}

Table scm_table(const std::vector<ScmRow>& rows) {
  Table t{{"seed", "explainer", "spearman", "kendall", "top_is_first", "causal_mass",
           "importance"},
          {}};
  for (const auto& r : rows) {
    std::string imp;
    for (std::size_t i = 0; i < r.importance.size(); ++i) {
      if (i) imp += ';';
      imp += format_number(r.importance[i]);
    }
    t.rows.push_back({as_int(r.seed), r.explainer, optional_cell(r.spearman),
                      optional_cell(r.kendall), std::int64_t{r.top_is_first ? 1 : 0},
                      r.causal_mass, imp});
  }
  return t;
}

Table minimality_table(const MinimalityResult& result) {
  Table t{{"seed", "wrapper", "test", "statistic", "pass"}, {}};
  for (const auto& r : result.rows) {
    for (std::size_t k = 0; k < r.tests.size(); ++k) {
      t.rows.push_back({as_int(r.seed), r.wrapper, "A" + std::to_string(k + 1),
                        r.tests[k].statistic, std::int64_t{r.tests[k].pass ? 1 : 0}});
    }
  }
  return t;
}

Table report_table(const EriReport& report) {
  Table t{{"component", "score", "mean_drift", "n", "standard_error", "hoeffding_radius"}, {}};
  for (const auto& [c, s] : report.components) {
    t.rows.push_back({"ERI-" + to_string(c), s.value, s.drift.mean_drift,
                      static_cast<std::int64_t>(s.drift.n), s.drift.standard_error,
                      optional_cell(s.drift.hoeffding_radius)});
  }
  return t;
}

std::string report_to_json(const EriReport& report, const Manifest& manifest) {
  ordered_json j;
  j["manifest"] = manifest_json(manifest);
  j["explainer"] = report.explainer_name;
  j["eri_config_hash"] = report.config_hash;
  ordered_json comps = ordered_json::object();
  for (const auto& [c, s] : report.components) {
    ordered_json e;
    e["score"] = s.value;
    e["mean_drift"] = s.drift.mean_drift;
    e["n"] = s.drift.n;
    e["confidence"] = s.drift.confidence;
    e["standard_error"] = s.drift.standard_error;
    if (s.drift.hoeffding_radius) {
      e["hoeffding_radius"] = *s.drift.hoeffding_radius;
    } else {
      e["hoeffding_radius"] = nullptr;
    }
    comps["ERI-" + to_string(c)] = e;
  }
  j["components"] = comps;
  if (report.aggregate) {
    j["aggregate"] = {{"aggregator", to_string(report.aggregate->first)},
                      {"value", report.aggregate->second}};
  }
  if (report.minimum) j["minimum"] = *report.minimum;
  return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw Error("failed writing " + path);
}

}  // namespace eri::bench
