// OpenMP kernels against the serial reference.

#include <benchmark/benchmark.h>

#include <vector>

#include "arlab/inference.hpp"
#include "arlab/kernels.hpp"

namespace {

using arlab::Index;
using arlab::SeedSpec;
using arlab::SystemMatrix;

const SystemMatrix kA = SystemMatrix::parse("0.6,0.1;-0.2,0.5");
const SystemMatrix kB = SystemMatrix::parse("0.5,0.0;0.1,0.4");

void BM_LogRatioSerial(benchmark::State& state) {
    const Index samples = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(arlab::reference::log_ratio_samples(kA, kB, 50, samples, SeedSpec{1, 0}));
    }
    state.SetItemsProcessed(state.iterations() * samples);
}

void BM_LogRatioParallel(benchmark::State& state) {
    const Index samples = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(arlab::log_ratio_samples(kA, kB, 50, samples, SeedSpec{1, 0}, 0));
    }
    state.SetItemsProcessed(state.iterations() * samples);
}

std::vector<SystemMatrix> grid_members() {
    const arlab::HypothesisClass cls = arlab::grid_class(SystemMatrix::scalar(0.0), 0.9, 9);
    return {cls.members().begin(), cls.members().end()};
}

void BM_TrialSelectionsSerial(benchmark::State& state) {
    const auto members = grid_members();
    const Index trials = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            arlab::reference::trial_selections(SystemMatrix::scalar(0.5), members, 100, trials, SeedSpec{2, 0}));
    }
    state.SetItemsProcessed(state.iterations() * trials);
}

void BM_TrialSelectionsParallel(benchmark::State& state) {
    const auto members = grid_members();
    const Index trials = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            arlab::trial_selections(SystemMatrix::scalar(0.5), members, 100, trials, SeedSpec{2, 0}, 0));
    }
    state.SetItemsProcessed(state.iterations() * trials);
}

}  // namespace

BENCHMARK(BM_LogRatioSerial)->Arg(1 << 12)->Arg(1 << 15)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LogRatioParallel)->Arg(1 << 12)->Arg(1 << 15)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrialSelectionsSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrialSelectionsParallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
