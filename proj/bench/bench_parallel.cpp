// Copyright 2026 The SQPC Simulator Authors
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

// Serial reference vs OpenMP kernels on the three data-parallel workloads.

#include <benchmark/benchmark.h>

#include "sqpc/execution.hpp"
#include "sqpc/harness.hpp"
#include "sqpc/protocol.hpp"

using namespace sqpc;

namespace {

Execution exec_of(const benchmark::State& state) {
    return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void label(benchmark::State& state) {
    state.SetLabel(state.range(0) == 0 ? "serial" : "parallel x" + std::to_string(max_threads()));
}

void BM_SimulateRounds(benchmark::State& state) {
    const AttackSpec attack = MeasureResend{BasisPolicy::UniformRandom};
    const auto n = static_cast<std::size_t>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_rounds(attack, n, 1, 0.5, exec_of(state)));
    }
    state.SetItemsProcessed(state.iterations() * state.range(1));
    label(state);
}

void BM_MonteCarloDetection(benchmark::State& state) {
    const Workflow wf = detection_workflow(InterceptResend{UniformRandomProduct{}});
    const auto n = static_cast<std::uint64_t>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(monte_carlo(wf, n, 2, exec_of(state)));
    }
    state.SetItemsProcessed(state.iterations() * state.range(1));
    label(state);
}

void BM_Theorem1Sweep(benchmark::State& state) {
    const auto grid = static_cast<std::size_t>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(theorem1_sweep(grid, 2, 3, {}, exec_of(state)));
    }
    state.SetItemsProcessed(state.iterations() * state.range(1) * state.range(1) * 3);
    label(state);
}

}  // namespace

BENCHMARK(BM_SimulateRounds)->ArgsProduct({{0, 1}, {4096, 65536}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloDetection)->ArgsProduct({{0, 1}, {100000}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Theorem1Sweep)->ArgsProduct({{0, 1}, {10}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
