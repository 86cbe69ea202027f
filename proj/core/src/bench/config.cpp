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

#include "eri/bench/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <type_traits>

#include "eri/bench/report.hpp"
#include "eri/error.hpp"

namespace eri::bench {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc() || res.ptr != end) {
    throw ConfigError("bad value for '" + key + "': " + text);
  }
  return value;
}

void merge(std::set<std::string>& into, std::initializer_list<const char*> keys) {
  for (const char* k : keys) into.insert(k);
}

std::string num(double v) { return format_number(v); }

std::string num(std::size_t v) { return std::to_string(v); }

std::string flag(bool v) { return v ? "true" : "false"; }

template <typename T>
std::string join(const std::vector<T>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    if constexpr (std::is_same_v<T, std::string>) {
      out += items[i];
    } else if constexpr (std::is_floating_point_v<T>) {
      out += format_number(items[i]);
    } else {
      out += std::to_string(items[i]);
    }
  }
  return out;
}

void put_train(KeyValueConfig& kv, const TrainConfig& t) {
  kv.set("learning_rate", num(t.learning_rate));
  kv.set("steps", num(t.steps));
  kv.set("batch_size", num(t.batch_size));
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::string_view text) {
  KeyValueConfig cfg;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(stripped).substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    if (cfg.has(key)) throw ConfigError("duplicate key '" + key + "'");
    cfg.entries_[key] = trim(std::string_view(stripped).substr(eq + 1));
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  entries_[key] = value;
}

std::string KeyValueConfig::get_string(const std::string& key,
                                       const std::string& fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : parse_number<double>(key, it->second);
}

std::size_t KeyValueConfig::get_size(const std::string& key, std::size_t fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : parse_number<std::size_t>(key, it->second);
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key, std::uint64_t fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : parse_number<std::uint64_t>(key, it->second);
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  const auto& v = it->second;
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("bad boolean for '" + key + "': " + v);
}

std::vector<double> KeyValueConfig::get_doubles(const std::string& key,
                                                const std::vector<double>& fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  std::vector<double> out;
  for (const auto& item : split_list(it->second)) out.push_back(parse_number<double>(key, item));
  return out;
}

std::vector<std::uint64_t> KeyValueConfig::get_u64s(
    const std::string& key, const std::vector<std::uint64_t>& fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  std::vector<std::uint64_t> out;
  for (const auto& item : split_list(it->second)) {
    out.push_back(parse_number<std::uint64_t>(key, item));
  }
  return out;
}

std::vector<std::string> KeyValueConfig::get_strings(
    const std::string& key, const std::vector<std::string>& fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : split_list(it->second);
}

void KeyValueConfig::require_known(const std::set<std::string>& allowed) const {
  for (const auto& [k, v] : entries_) {
    if (!allowed.count(k)) throw ConfigError("unknown config key '" + k + "'");
  }
}

std::string KeyValueConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= 0xff;
    h *= 0x100000001b3ULL;
  };
  for (const auto& [k, v] : entries_) {
    feed(k);
    feed(v);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::set<std::string> eri_config_keys() {
  return {"distance", "mc_samples", "seeds", "normalize", "normalize_epsilon",
          "confidence", "workers", "checkpoint_index"};
}

EriConfig eri_config_from(const KeyValueConfig& kv) {
  EriConfig cfg;
  if (kv.has("distance")) cfg.distance = parse_distance(kv.get_string("distance", ""));
  cfg.mc_samples = kv.get_size("mc_samples", cfg.mc_samples);
  cfg.seeds = kv.get_u64s("seeds", cfg.seeds);
  cfg.normalize = kv.get_bool("normalize", cfg.normalize);
  cfg.normalize_epsilon = kv.get_double("normalize_epsilon", cfg.normalize_epsilon);
  cfg.confidence = kv.get_double("confidence", cfg.confidence);
  cfg.workers = kv.get_size("workers", cfg.workers);
  cfg.checkpoint_index = kv.get_size("checkpoint_index", cfg.checkpoint_index);
  cfg.validate();
  return cfg;
}

CollapseCurveConfig collapse_config_from(const KeyValueConfig& kv) {
  kv.require_known({"d", "n", "alphas", "seed", "explainers", "eval_points", "hsic_samples",
                    "bins", "workers"});
  CollapseCurveConfig cfg;
  cfg.d = kv.get_size("d", cfg.d);
  cfg.n = kv.get_size("n", cfg.n);
  cfg.alphas = kv.get_doubles("alphas", cfg.alphas);
  cfg.seed = kv.get_u64("seed", cfg.seed);
  cfg.explainers = kv.get_strings("explainers", cfg.explainers);
  cfg.eval_points = kv.get_size("eval_points", cfg.eval_points);
  cfg.hsic_samples = kv.get_size("hsic_samples", cfg.hsic_samples);
  cfg.binning.bins = kv.get_size("bins", cfg.binning.bins);
  cfg.workers = kv.get_size("workers", cfg.workers);
  return cfg;
}

DecouplingConfig decoupling_config_from(const KeyValueConfig& kv) {
  auto allowed = eri_config_keys();
  merge(allowed, {"d", "n", "seed", "hidden", "learning_rate", "steps", "batch_size",
                  "explainers", "sigma", "query_points", "top_k", "horizon", "ar_phi",
                  "ar_sigma", "keep", "remove"});
  kv.require_known(allowed);
  DecouplingConfig cfg;
  cfg.d = kv.get_size("d", cfg.d);
  cfg.n = kv.get_size("n", cfg.n);
  cfg.seed = kv.get_u64("seed", cfg.seed);
  cfg.hidden = kv.get_size("hidden", cfg.hidden);
  cfg.train.learning_rate = kv.get_double("learning_rate", cfg.train.learning_rate);
  cfg.train.steps = kv.get_size("steps", cfg.train.steps);
  cfg.train.snapshot_every = cfg.train.steps;
  cfg.train.batch_size = kv.get_size("batch_size", cfg.train.batch_size);
  cfg.explainers = kv.get_strings("explainers", cfg.explainers);
  cfg.sigma = kv.get_double("sigma", cfg.sigma);
  cfg.query_points = kv.get_size("query_points", cfg.query_points);
  cfg.top_k = kv.get_size("top_k", cfg.top_k);
  cfg.horizon = kv.get_size("horizon", cfg.horizon);
  cfg.ar_phi = kv.get_double("ar_phi", cfg.ar_phi);
  cfg.ar_sigma = kv.get_double("ar_sigma", cfg.ar_sigma);
  cfg.keep = kv.get_size("keep", cfg.keep);
  cfg.remove = kv.get_size("remove", cfg.remove);
  cfg.eri = eri_config_from(kv);
  return cfg;
}

ScmConfig scm_config_from(const KeyValueConfig& kv) {
  kv.require_known({"nonlinear", "n", "seeds", "hidden", "learning_rate", "steps",
                    "batch_size", "explainers", "eval_points", "ig_steps", "hsic_samples",
                    "workers"});
  ScmConfig cfg;
  cfg.nonlinear = kv.get_bool("nonlinear", cfg.nonlinear);
  cfg.n = kv.get_size("n", cfg.n);
  cfg.seeds = kv.get_u64s("seeds", cfg.seeds);
  cfg.hidden = kv.get_size("hidden", cfg.hidden);
  cfg.train.learning_rate = kv.get_double("learning_rate", cfg.train.learning_rate);
  cfg.train.steps = kv.get_size("steps", cfg.train.steps);
  cfg.train.snapshot_every = cfg.train.steps;
  cfg.train.batch_size = kv.get_size("batch_size", cfg.train.batch_size);
  cfg.explainers = kv.get_strings("explainers", cfg.explainers);
  cfg.eval_points = kv.get_size("eval_points", cfg.eval_points);
  cfg.ig_steps = kv.get_size("ig_steps", cfg.ig_steps);
  cfg.hsic_samples = kv.get_size("hsic_samples", cfg.hsic_samples);
  cfg.workers = kv.get_size("workers", cfg.workers);
  return cfg;
}

MinimalityConfig minimality_config_from(const KeyValueConfig& kv) {
  kv.require_known({"base", "seeds", "d", "k", "eta", "u_scale", "w_scale", "tau", "mc_samples",
                    "small_sigma", "a1_threshold", "a2_threshold", "a3_threshold",
                    "a4_threshold", "sigma_grid"});
  MinimalityConfig cfg;
  cfg.seeds = kv.get_u64s("seeds", cfg.seeds);
  cfg.d = kv.get_size("d", cfg.d);
  cfg.k = kv.get_double("k", cfg.k);
  cfg.eta = kv.get_double("eta", cfg.eta);
  cfg.u_scale = kv.get_double("u_scale", cfg.u_scale);
  cfg.w_scale = kv.get_double("w_scale", cfg.w_scale);
  cfg.tau = kv.get_double("tau", cfg.tau);
  cfg.mc_samples = kv.get_size("mc_samples", cfg.mc_samples);
  cfg.small_sigma = kv.get_double("small_sigma", cfg.small_sigma);
  cfg.a1_threshold = kv.get_double("a1_threshold", cfg.a1_threshold);
  cfg.a2_threshold = kv.get_double("a2_threshold", cfg.a2_threshold);
  cfg.a3_threshold = kv.get_double("a3_threshold", cfg.a3_threshold);
  cfg.a4_threshold = kv.get_double("a4_threshold", cfg.a4_threshold);
  cfg.sigma_grid = kv.get_doubles("sigma_grid", cfg.sigma_grid);
  return cfg;
}

ScoreConfig score_config_from(const KeyValueConfig& kv) {
  auto allowed = eri_config_keys();
  merge(allowed, {"explainer", "d", "n", "seed", "hidden", "components", "sigma", "shift",
                  "horizon", "aggregator"});
  kv.require_known(allowed);
  ScoreConfig cfg;
  cfg.explainer = kv.get_string("explainer", cfg.explainer);
  cfg.d = kv.get_size("d", cfg.d);
  cfg.n = kv.get_size("n", cfg.n);
  cfg.seed = kv.get_u64("seed", cfg.seed);
  cfg.hidden = kv.get_size("hidden", cfg.hidden);
  if (kv.has("components")) {
    cfg.components.clear();
    for (const auto& c : kv.get_strings("components", {})) {
      cfg.components.push_back(parse_component(c));
    }
  }
  cfg.sigma = kv.get_double("sigma", cfg.sigma);
  cfg.shift = kv.get_double("shift", cfg.shift);
  cfg.horizon = kv.get_size("horizon", cfg.horizon);
  if (kv.has("aggregator")) cfg.aggregator = parse_aggregator(kv.get_string("aggregator", ""));
  cfg.eri = eri_config_from(kv);
  return cfg;
}

KeyValueConfig to_key_values(const EriConfig& cfg) {
  KeyValueConfig kv;
  kv.set("distance", to_string(cfg.distance));
  kv.set("mc_samples", num(cfg.mc_samples));
  kv.set("seeds", join(cfg.seeds));
  kv.set("normalize", flag(cfg.normalize));
  kv.set("normalize_epsilon", num(cfg.normalize_epsilon));
  kv.set("confidence", num(cfg.confidence));
  kv.set("checkpoint_index", num(cfg.checkpoint_index));
  return kv;
}

KeyValueConfig to_key_values(const CollapseCurveConfig& cfg) {
  KeyValueConfig kv;
  kv.set("d", num(cfg.d));
  kv.set("n", num(cfg.n));
  kv.set("alphas", join(cfg.alphas.empty() ? default_alpha_grid() : cfg.alphas));
  kv.set("seed", std::to_string(cfg.seed));
  kv.set("explainers", join(cfg.explainers));
  kv.set("eval_points", num(cfg.eval_points));
  kv.set("hsic_samples", num(cfg.hsic_samples));
  kv.set("bins", num(cfg.binning.bins));
  return kv;
}

KeyValueConfig to_key_values(const DecouplingConfig& cfg) {
  KeyValueConfig kv = to_key_values(cfg.eri);
  kv.set("d", num(cfg.d));
  kv.set("n", num(cfg.n));
  kv.set("seed", std::to_string(cfg.seed));
  kv.set("hidden", num(cfg.hidden));
  put_train(kv, cfg.train);
  kv.set("explainers", join(cfg.explainers));
  kv.set("sigma", num(cfg.sigma));
  kv.set("query_points", num(cfg.query_points));
  kv.set("top_k", num(cfg.top_k));
  kv.set("horizon", num(cfg.horizon));
  kv.set("ar_phi", num(cfg.ar_phi));
  kv.set("ar_sigma", num(cfg.ar_sigma));
  kv.set("keep", num(cfg.keep));
  kv.set("remove", num(cfg.remove));
  return kv;
}

KeyValueConfig to_key_values(const ScmConfig& cfg) {
  KeyValueConfig kv;
  kv.set("nonlinear", flag(cfg.nonlinear));
  kv.set("n", num(cfg.n));
  kv.set("seeds", join(cfg.seeds));
  kv.set("hidden", num(cfg.hidden));
  put_train(kv, cfg.train);
  kv.set("explainers", join(cfg.explainers));
  kv.set("eval_points", num(cfg.eval_points));
  kv.set("ig_steps", num(cfg.ig_steps));
  kv.set("hsic_samples", num(cfg.hsic_samples));
  return kv;
}

KeyValueConfig to_key_values(const MinimalityConfig& cfg, const std::string& base) {
  KeyValueConfig kv;
  kv.set("base", base);
  kv.set("seeds", join(cfg.seeds));
  kv.set("d", num(cfg.d));
  kv.set("k", num(cfg.k));
  kv.set("eta", num(cfg.eta));
  kv.set("u_scale", num(cfg.u_scale));
  kv.set("w_scale", num(cfg.w_scale));
  kv.set("tau", num(cfg.tau));
  kv.set("mc_samples", num(cfg.mc_samples));
  kv.set("small_sigma", num(cfg.small_sigma));
  kv.set("a1_threshold", num(cfg.a1_threshold));
  kv.set("a2_threshold", num(cfg.a2_threshold));
  kv.set("a3_threshold", num(cfg.a3_threshold));
  kv.set("a4_threshold", num(cfg.a4_threshold));
  kv.set("sigma_grid", join(cfg.sigma_grid));
  return kv;
}

KeyValueConfig to_key_values(const ScoreConfig& cfg) {
  KeyValueConfig kv = to_key_values(cfg.eri);
  kv.set("explainer", cfg.explainer);
  kv.set("d", num(cfg.d));
  kv.set("n", num(cfg.n));
  kv.set("seed", std::to_string(cfg.seed));
  kv.set("hidden", num(cfg.hidden));
  std::vector<std::string> comps;
  for (auto c : cfg.components) comps.push_back(to_string(c));
  kv.set("components", join(comps));
  kv.set("sigma", num(cfg.sigma));
  kv.set("shift", num(cfg.shift));
  kv.set("horizon", num(cfg.horizon));
  kv.set("aggregator", to_string(cfg.aggregator));
  return kv;
}

}  // namespace eri::bench
