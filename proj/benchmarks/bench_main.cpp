// Copyright 2026 The scatterqi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <numbers>

#include "scatterqi/medium.hpp"
#include "scatterqi/montecarlo.hpp"
#include "scatterqi/rng.hpp"
#include "scatterqi/shaping.hpp"
#include "scatterqi/source.hpp"
#include "scatterqi/twophoton.hpp"

namespace {

using namespace scatterqi;

void BM_Permanent(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const TransmissionMatrix u = haar_unitary(n, 11);
  for (auto _ : state) benchmark::DoNotOptimize(permanent(u.entries()));
}
BENCHMARK(BM_Permanent)->DenseRange(2, 12, 2);

void BM_GaussianMatrix(benchmark::State& state) {
  const auto n_out = static_cast<std::size_t>(state.range(0));
  const auto threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state)
    benchmark::DoNotOptimize(gaussian_transmission_matrix(n_out, 1920, 3, threads));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 1920);
}
BENCHMARK(BM_GaussianMatrix)->Args({1000, 1})->Args({4000, 1})->Args({4000, 4})
    ->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_HaarUnitary(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(haar_unitary(n, 5));
}
BENCHMARK(BM_HaarUnitary)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_OptimizeAnalytic(benchmark::State& state) {
  const TransmissionMatrix t = gaussian_transmission_matrix(4000, 1920, 3);
  const PhasePattern mode = pattern_template(InputMode::K, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(optimize_pattern(t, mode, 17));
}
BENCHMARK(BM_OptimizeAnalytic)->Arg(64)->Arg(960)->Unit(benchmark::kMicrosecond);

void BM_OptimizeStepped(benchmark::State& state) {
  const TransmissionMatrix t = gaussian_transmission_matrix(100, 1920, 3);
  const PhasePattern mode = pattern_template(InputMode::K, static_cast<std::size_t>(state.range(0)));
  const OptimizeMethod stepped = OptimizeMethod::stepped();
  for (auto _ : state) benchmark::DoNotOptimize(optimize_pattern(t, mode, 17, stepped));
}
BENCHMARK(BM_OptimizeStepped)->Arg(64)->Arg(960)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_ProgramCircuit(benchmark::State& state) {
  const TransmissionMatrix t = gaussian_transmission_matrix(4000, 1920, 3);
  const PatternSet set = optimize_pattern_set(t, 960, 0, 1);
  const int rounds = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(program_circuit(t, set, 0, 1, std::numbers::pi / 2, rounds));
}
BENCHMARK(BM_ProgramCircuit)->Arg(0)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Eq2(benchmark::State& state) {
  double alpha = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eq2_probabilities(0.5 * embeddability_bound(alpha), alpha));
    alpha += 1e-3;
  }
}
BENCHMARK(BM_Eq2);

void BM_MonteCarlo(benchmark::State& state) {
  const ProgrammedCircuit circuit = ideal_circuit(0.5, std::numbers::pi);
  const PhotonPairSource source = source_preset("highpower");
  const auto pulses = static_cast<std::uint64_t>(state.range(0));
  const auto threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state)
    benchmark::DoNotOptimize(montecarlo_counts(circuit, source, pulses, 7, 0.0, {}, threads));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarlo)->Args({1 << 20, 1})->Args({1 << 20, 4})->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
