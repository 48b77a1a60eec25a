// Copyright 2026 The kidecomp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "kidecomp/applications.hpp"
#include "kidecomp/channels.hpp"
#include "kidecomp/decompose.hpp"
#include "kidecomp/synth.hpp"

namespace {

using namespace kidecomp;

StateFamily sized_family(Index copies) {
  Rng rng(static_cast<std::uint64_t>(1000 + copies));
  std::vector<BlockDims> blocks;
  for (Index i = 0; i < copies; ++i) blocks.push_back({2, 2});
  blocks.push_back({1, 3});
  return constructed_family(blocks, 4, rng, 2).family;
}

void BM_Decompose(benchmark::State& state) {
  const StateFamily f = sized_family(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(decompose(f, 1));
  state.counters["dim"] = static_cast<double>(f.dim());
}
BENCHMARK(BM_Decompose)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_DecomposeEnvelope(benchmark::State& state) {
  Rng rng(2024);
  const std::vector<std::vector<BlockDims>> shapes{{{8, 8}}, {{1, 32}}, {{64, 1}}, {{4, 4}, {4, 2}, {2, 8}}};
  const Index pad = state.range(0) == 1 ? 32 : 0;
  const StateFamily f = constructed_family(shapes[static_cast<std::size_t>(state.range(0))], 3, rng, pad).family;
  for (auto _ : state) benchmark::DoNotOptimize(decompose(f, 1));
  state.counters["dim"] = static_cast<double>(f.dim());
}
BENCHMARK(BM_DecomposeEnvelope)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_CheckMaximal(benchmark::State& state) {
  const DecomposedFamily d = decompose(sized_family(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(check_maximal(d));
}
BENCHMARK(BM_CheckMaximal)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_EntropyReport(benchmark::State& state) {
  const DecomposedFamily d = decompose(sized_family(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(entropy_report(d));
}
BENCHMARK(BM_EntropyReport)->DenseRange(1, 4)->Unit(benchmark::kMicrosecond);

void BM_ProjectToPreserving(benchmark::State& state) {
  Rng rng(77);
  const StateFamily f = constructed_family({{1, 2}, {2, 1}}, 3, rng).family;
  const Index n = f.dim();
  for (auto _ : state) {
    std::vector<ComplexMatrix> start{ComplexMatrix::Identity(n, n) + 0.3 * rng.ginibre(n, n),
                                     0.3 * rng.ginibre(n, n)};
    benchmark::DoNotOptimize(project_to_preserving(f, start, rng));
  }
}
BENCHMARK(BM_ProjectToPreserving)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
