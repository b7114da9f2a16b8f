#include "optokerr/presets.hpp"
#include "optokerr/sweep.hpp"

#include <benchmark/benchmark.h>

namespace {

optokerr::SweepSpec grid_spec(std::size_t n) {
    // fig9-style power x effective-detuning grid
    return optokerr::figure_preset("fig9", n).curves.front().spec;
}

void BM_sweep_serial(benchmark::State& state) {
    const auto spec = grid_spec(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto records = optokerr::run_sweep_serial(spec);
        benchmark::DoNotOptimize(records.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(optokerr::grid_size(spec)));
}

void BM_sweep_parallel(benchmark::State& state) {
    const auto spec = grid_spec(static_cast<std::size_t>(state.range(0)));
    const int jobs = static_cast<int>(state.range(1));
    for (auto _ : state) {
        auto records = optokerr::run_sweep_parallel(spec, jobs);
        benchmark::DoNotOptimize(records.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(optokerr::grid_size(spec)));
}

}  // namespace

BENCHMARK(BM_sweep_serial)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_parallel)
    ->ArgsProduct({{32, 64}, {1, 2, 4}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

BENCHMARK_MAIN();
