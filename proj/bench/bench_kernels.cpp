// Copyright 2026 The dipolink Authors
// SPDX-License-Identifier: Apache-2.0

// Serial reference vs OpenMP kernels. Arg 0 = serial, 1 = parallel.

#include "dipolink/disorder.hpp"
#include "dipolink/optimize.hpp"
#include "dipolink/transfer.hpp"

#include <benchmark/benchmark.h>

using namespace dipolink;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) == 0 ? Execution::Serial : Execution::Parallel; }

void BM_FidelityGrid(benchmark::State& state) {
    const auto spec = decompose(buildChainHamiltonian(Geometry::uniformChain(23), {}));
    const TransitionAmplitude amp(spec, SiteState::basis(23, 0), SiteState::basis(23, 22));
    const std::size_t samples = 1'000'000;
    for (auto _ : state) benchmark::DoNotOptimize(sampleFidelity(amp, 2.0e5, samples, mode(state)));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * samples));
}

void BM_ChainSweep(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(chainSweep(2, 16, {}, {}, mode(state)));
}

void BM_RingSweep(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(ringSweep(4, 30, {}, {}, mode(state)));
}

void BM_Disorder(benchmark::State& state) {
    DisorderConfig cfg;
    cfg.samples = 10000;
    const auto g = Geometry::uniformChain(4, 1.0 / 3.0);
    for (auto _ : state) benchmark::DoNotOptimize(runDisorder(g, {}, cfg, {}, mode(state)));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * cfg.samples));
}

void BM_OptimizeRestarts(benchmark::State& state) {
    SearchConfig cfg;
    cfg.restarts = 4;
    for (auto _ : state) benchmark::DoNotOptimize(optimizePlacement(6, Objective::MinimizeTau, 0.9, cfg, mode(state)));
}

}  // namespace

BENCHMARK(BM_FidelityGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ChainSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RingSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Disorder)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OptimizeRestarts)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
