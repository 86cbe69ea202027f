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

#include <benchmark/benchmark.h>

#include <optional>
#include <vector>

#include "eri/dependence.hpp"
#include "eri/eri.hpp"
#include "eri/explainers.hpp"
#include "eri/model.hpp"
#include "eri/rng.hpp"

namespace {

using namespace eri;

Matrix normal_rows(std::size_t n, std::size_t d, std::uint64_t seed) {
  Matrix m(n, d);
  for (std::size_t r = 0; r < n; ++r) {
    Rng rng(seed, StreamTag::kData, r);
    for (std::size_t c = 0; c < d; ++c) m(r, c) = rng.normal();
  }
  return m;
}

// Exact enumeration doubles per added feature.
void BM_ExactShapley(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto net = NeuralModel::random({d, 8, 1}, Activation::kTanh, d);
  const std::vector<double> x(d, 0.5), base(d, 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_shapley(net, x, BaselineReplacement{base}));
  }
  state.SetComplexityN(static_cast<benchmark::IterationCount>(1) << d);
}
BENCHMARK(BM_ExactShapley)->DenseRange(10, 16)->Unit(benchmark::kMillisecond)->Complexity();

void BM_EriS(benchmark::State& state) {
  const auto net = NeuralModel::random({8, 32, 1}, Activation::kTanh, 1);
  const std::vector<double> x(8, 0.3);
  EriConfig cfg;
  cfg.mc_samples = static_cast<std::size_t>(state.range(0));
  cfg.seeds = {0};
  cfg.workers = static_cast<std::size_t>(state.range(1));
  GradTimesInput e;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eri_s(net, e, x, PerturbationLaw{0.1, std::nullopt, 0}, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EriS)->ArgsProduct({{500, 5000}, {1, 4}})->Unit(benchmark::kMillisecond);

void BM_Hsic(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix m = normal_rows(n, 2, 3);
  const auto a = m.column(0), b = m.column(1);
  for (auto _ : state) benchmark::DoNotOptimize(hsic(a, b, KernelSpec{}));
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(BM_Hsic)->Arg(250)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond)
    ->Complexity(benchmark::oNSquared);

void BM_Mcir(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix x = normal_rows(n, 5, 4);
  std::vector<double> y(n);
  for (std::size_t r = 0; r < n; ++r) y[r] = x(r, 0) + x(r, 1);
  const Dataset data{x, y};
  for (auto _ : state) benchmark::DoNotOptimize(mcir(data, McirConfig{}));
}
BENCHMARK(BM_Mcir)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
