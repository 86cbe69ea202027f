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

#include "cli.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eri/bench/config.hpp"
#include "eri/bench/experiments.hpp"
#include "eri/bench/report.hpp"
#include "eri/drift.hpp"
#include "eri/error.hpp"

namespace eri::cli {
namespace {

using bench::KeyValueConfig;
using bench::Manifest;
using bench::Table;

struct CommonOptions {
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> formats = {"csv", "json"};
  std::vector<std::string> overrides;
  std::optional<std::size_t> workers;
};

void add_common(CLI::App* sub, CommonOptions& opts) {
  sub->add_option("-c,--config", opts.config_path, "key = value config file")
      ->check(CLI::ExistingFile);
  sub->add_option("-o,--out", opts.out_dir, "directory for CSV/JSON artifacts");
  sub->add_option("--format", opts.formats, "subset of {csv,json}")
      ->delimiter(',')
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--set", opts.overrides, "override a config entry, key=value");
  sub->add_option("-j,--workers", opts.workers, "worker threads")
      ->check(CLI::PositiveNumber);
}

KeyValueConfig load_config(const CommonOptions& opts) {
  KeyValueConfig kv;
  if (!opts.config_path.empty()) kv = KeyValueConfig::load(opts.config_path);
  for (const auto& item : opts.overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("--set expects key=value, got '" + item + "'");
    }
    kv.set(item.substr(0, eq), item.substr(eq + 1));
  }
  return kv;
}

Manifest make_manifest(const std::string& subcommand, const KeyValueConfig& kv,
                       std::vector<std::uint64_t> seeds) {
  Manifest m;
  m.subcommand = subcommand;
  m.config_hash = kv.hash();
  m.seeds = std::move(seeds);
  for (const auto& [k, v] : kv.entries()) m.config.emplace_back(k, v);
  return m;
}

bool wants(const CommonOptions& opts, const std::string& format) {
  for (const auto& f : opts.formats) {
    if (f == format) return true;
  }
  return false;
}

// Without --out the CSV (or JSON when it is the only format) goes to `out`.
void emit(const CommonOptions& opts, const std::string& stem, const std::string& csv,
          const std::string& json, const Manifest& manifest, std::ostream& out) {
  if (opts.formats.empty()) throw ConfigError("--format must name at least one format");
  if (opts.out_dir.empty()) {
    out << (wants(opts, "csv") ? csv : json);
    return;
  }
  std::error_code ec;
  std::filesystem::create_directories(opts.out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + opts.out_dir);
  const std::filesystem::path dir(opts.out_dir);
  if (wants(opts, "csv")) bench::write_file((dir / (stem + ".csv")).string(), csv);
  if (wants(opts, "json")) bench::write_file((dir / (stem + ".json")).string(), json);
  bench::write_file((dir / "manifest.json").string(), bench::manifest_to_json(manifest));
}

void emit_table(const CommonOptions& opts, const std::string& stem, const Table& table,
                const Manifest& manifest, std::ostream& out) {
  emit(opts, stem, bench::to_csv(table), bench::to_json(table, manifest), manifest, out);
}

void run_collapse(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  const auto kv = load_config(opts);
  auto cfg = bench::collapse_config_from(kv);
  if (opts.workers) cfg.workers = *opts.workers;
  const auto result = bench::run_collapse_curve(cfg);
  for (const auto& reason : result.skipped) err << "skipped: " << reason << '\n';
  emit_table(opts, "collapse-curve", bench::collapse_table(result),
             make_manifest("collapse-curve", bench::to_key_values(cfg), {cfg.seed}), out);
}

void run_decoupling(const CommonOptions& opts, std::ostream& out) {
  const auto kv = load_config(opts);
  auto cfg = bench::decoupling_config_from(kv);
  if (opts.workers) cfg.eri.workers = *opts.workers;
  emit_table(opts, "decoupling", bench::decoupling_table(bench::run_decoupling(cfg)),
             make_manifest("decoupling", bench::to_key_values(cfg), {cfg.seed}), out);
}

void run_scm(const CommonOptions& opts, std::ostream& out) {
  const auto kv = load_config(opts);
  auto cfg = bench::scm_config_from(kv);
  if (opts.workers) cfg.workers = *opts.workers;
  emit_table(opts, "scm", bench::scm_table(bench::run_scm(cfg)),
             make_manifest("scm", bench::to_key_values(cfg), cfg.seeds), out);
}

void run_minimality(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  const auto kv = load_config(opts);
  const auto cfg = bench::minimality_config_from(kv);
  const std::string base = kv.get_string("base", "GradientOnly");
  const auto result = bench::run_minimality_suite(cfg, base);
  err << "minimality matrix diagonal: " << (result.diagonal ? "yes" : "no") << '\n';
  emit_table(opts, "minimality", bench::minimality_table(result),
             make_manifest("minimality", bench::to_key_values(cfg, base), cfg.seeds), out);
}

void run_score(const CommonOptions& opts, std::ostream& out) {
  const auto kv = load_config(opts);
  auto cfg = bench::score_config_from(kv);
  if (opts.workers) cfg.eri.workers = *opts.workers;
  const auto report = bench::run_score(cfg);
  const auto manifest = make_manifest("score", bench::to_key_values(cfg), {cfg.seed});
  CommonOptions score_opts = opts;
  // The report is JSON first; CSV on stdout only when asked for alone.
  if (opts.out_dir.empty() && !(opts.formats.size() == 1 && opts.formats[0] == "csv")) {
    score_opts.formats = {"json"};
  }
  emit(score_opts, "score", bench::to_csv(bench::report_table(report)),
       bench::report_to_json(report, manifest), manifest, out);
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"ERI reliability benchmark", "eri-bench"};
  app.require_subcommand(1);
  app.set_version_flag("--version", bench::library_version());

  CommonOptions collapse_opts, decoupling_opts, scm_opts, minimality_opts, score_opts;
  auto* collapse = app.add_subcommand("collapse-curve", "duplicate-feature collapse curves");
  add_common(collapse, collapse_opts);
  auto* decoupling = app.add_subcommand("decoupling", "reliability vs usefulness table");
  add_common(decoupling, decoupling_opts);
  auto* scm = app.add_subcommand("scm", "ranking agreement on synthetic SCMs");
  add_common(scm, scm_opts);
  auto* minimality = app.add_subcommand("minimality", "wrapper vs axiom-test matrix");
  add_common(minimality, minimality_opts);
  auto* score = app.add_subcommand("score", "ERI report for one model and explainer");
  add_common(score, score_opts);

  double eta = 0.0;
  double delta = 0.0;
  auto* sample_size = app.add_subcommand("sample-size", "Monte Carlo draws for a target error");
  sample_size->add_option("--eta", eta, "absolute error")->required();
  sample_size->add_option("--delta", delta, "failure probability")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << bench::library_version() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitConfig;
  }

  try {
    if (*collapse) run_collapse(collapse_opts, out, err);
    if (*decoupling) run_decoupling(decoupling_opts, out);
    if (*scm) run_scm(scm_opts, out);
    if (*minimality) run_minimality(minimality_opts, out, err);
    if (*score) run_score(score_opts, out);
    if (*sample_size) out << hoeffding_sample_size(eta, delta) << '\n';
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DimensionError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace eri::cli
