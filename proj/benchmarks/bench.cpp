#include <benchmark/benchmark.h>

#include "adqs/bounds.hpp"
#include "adqs/dynamics.hpp"
#include "adqs/oracle.hpp"

using namespace adqs;

namespace {

// Arguments: log2 N, run time.
void BM_EvolveWideOpenGlobal(benchmark::State& state) {
    const auto params = ModelParams::from_omega(std::int64_t{1} << state.range(0), 1.0, 1.0, Schedule::Global);
    for (auto _ : state) benchmark::DoNotOptimize(final_success_probability(params, static_cast<double>(state.range(1))));
}
BENCHMARK(BM_EvolveWideOpenGlobal)->Args({8, 1000})->Args({12, 100000})->Args({16, 10000000})->Unit(benchmark::kMillisecond);

void BM_EvolveSemiOpenLocal(benchmark::State& state) {
    const auto params = ModelParams::from_omega(std::int64_t{1} << state.range(0), 0.5, 1.0, Schedule::Local);
    for (auto _ : state) benchmark::DoNotOptimize(final_success_probability(params, static_cast<double>(state.range(1))));
}
BENCHMARK(BM_EvolveSemiOpenLocal)->Args({8, 100})->Args({14, 1000})->Unit(benchmark::kMillisecond);

void BM_NecessityC(benchmark::State& state) {
    const double alpha = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(necessity_c(alpha, 1.0, Schedule::Global));
}
BENCHMARK(BM_NecessityC)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_EvolveFull(benchmark::State& state) {
    const auto params = ModelParams::from_omega(state.range(0), 0.5, 1.0, Schedule::Global);
    for (auto _ : state) benchmark::DoNotOptimize(evolve_full(params, 10.0).success_probability());
}
BENCHMARK(BM_EvolveFull)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
