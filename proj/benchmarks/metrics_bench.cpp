/*
 * Copyright 2026 The skillgrade Authors.
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

#include <random>
#include <vector>

#include "skillgrade/metrics.hpp"

namespace {

using namespace skillgrade::metrics;

std::pair<std::vector<double>, std::vector<double>> scores(std::size_t n) {
  std::mt19937_64 rng(n);
  std::uniform_int_distribution<int> half_points(0, 100);
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = half_points(rng) / 2.0;
    b[i] = std::min(50.0, a[i] + half_points(rng) % 7 / 2.0);
  }
  return {a, b};
}

void BM_Kendall(benchmark::State& state) {
  const auto [a, b] = scores(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kendall_tau_b(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Kendall)->RangeMultiplier(4)->Range(16, 16384)->Complexity();

void BM_Spearman(benchmark::State& state) {
  const auto [a, b] = scores(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spearman(a, b));
}
BENCHMARK(BM_Spearman)->RangeMultiplier(4)->Range(16, 16384);

void BM_Qwk(benchmark::State& state) {
  const auto [a, b] = scores(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qwk(a, b));
}
BENCHMARK(BM_Qwk)->RangeMultiplier(4)->Range(16, 16384);

void BM_AgreementReport(benchmark::State& state) {
  const auto [a, b] = scores(148);
  std::vector<PairedScores> pairs;
  for (int c = 0; c < 9; ++c) pairs.push_back({"c" + std::to_string(c), a, b});
  for (auto _ : state) benchmark::DoNotOptimize(agreement_report(pairs));
}
BENCHMARK(BM_AgreementReport);

}  // namespace
