// Serial reference vs OpenMP kernels on large sweep grids.

#include "uavchan/experiments.hpp"
#include "uavchan/kernels.hpp"

#include <benchmark/benchmark.h>

#include <cstdint>
#include <numeric>
#include <vector>

using namespace uavchan;

namespace {

std::vector<double> ramp(std::size_t n, double first, double step) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = first + step * static_cast<double>(i);
    return v;
}

void BM_LatencyKernel(benchmark::State& state, kernels::Execution exec) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto ts = ramp(n, 10, 10);
    const auto rate = ramp(n, 1e6, 37);
    std::vector<double> out(n);
    const kernels::LatencyBatch batch{ts, rate, 3.0};
    for (auto _ : state) {
        kernels::latency(batch, out, exec);
        benchmark::DoNotOptimize(out.data());
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

void BM_UtilizationKernel(benchmark::State& state, kernels::Execution exec) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto ts = ramp(n, 10, 10);
    const std::vector<double> users(n, 5.0);
    const auto rate = ramp(n, 1e6, 37);
    const std::vector<double> ber(n, 0.01);
    std::vector<double> out(n);
    const kernels::UtilizationBatch batch{ts, users, rate, ber, 1.0};
    for (auto _ : state) {
        kernels::utilization(batch, out, exec);
        benchmark::DoNotOptimize(out.data());
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

void BM_LatencySweep(benchmark::State& state, kernels::Execution exec) {
    std::vector<std::int64_t> ts(static_cast<std::size_t>(state.range(0)));
    std::iota(ts.begin(), ts.end(), std::int64_t{1});
    const std::vector<double> rates = {1.54e6, 6e6, 10e6, 45e6};
    for (auto _ : state) {
        auto table = sweep_latency(ts, rates, 3, exec);
        benchmark::DoNotOptimize(table.cells().data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * ts.size() * rates.size()));
}

}  // namespace

BENCHMARK_CAPTURE(BM_LatencyKernel, serial, kernels::Execution::serial)->Range(1 << 12, 1 << 22);
BENCHMARK_CAPTURE(BM_LatencyKernel, parallel, kernels::Execution::parallel)->Range(1 << 12, 1 << 22);
BENCHMARK_CAPTURE(BM_UtilizationKernel, serial, kernels::Execution::serial)->Range(1 << 12, 1 << 22);
BENCHMARK_CAPTURE(BM_UtilizationKernel, parallel, kernels::Execution::parallel)
    ->Range(1 << 12, 1 << 22);
BENCHMARK_CAPTURE(BM_LatencySweep, serial, kernels::Execution::serial)->Arg(1 << 18);
BENCHMARK_CAPTURE(BM_LatencySweep, parallel, kernels::Execution::parallel)->Arg(1 << 18);

BENCHMARK_MAIN();
