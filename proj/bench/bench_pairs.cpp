// Parallel vs serial pair kernels on the same sampled flags.
#include "flagtrans/verify.hpp"

#include <benchmark/benchmark.h>

#include <map>
#include <tuple>

using namespace flagtrans;

namespace {

const std::vector<Flag>& flags_for(int n, int p, int count)
{
    static std::map<std::tuple<int, int, int>, std::vector<Flag>> cache;
    auto key = std::make_tuple(n, p, count);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, evaluate_samples(spinor_sphere(n, p), sample_sphere(n, count, 3), Kernel::Serial)).first;
    return it->second;
}

void BM_PairsSerial(benchmark::State& st)
{
    const auto& f = flags_for(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)), static_cast<int>(st.range(2)));
    for (auto _ : st) benchmark::DoNotOptimize(pair_margins(f, Kernel::Serial));
    st.counters["pairs"] = static_cast<double>(f.size() * (f.size() - 1) / 2);
}

void BM_PairsParallel(benchmark::State& st)
{
    const auto& f = flags_for(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)), static_cast<int>(st.range(2)));
    for (auto _ : st) benchmark::DoNotOptimize(pair_margins(f, Kernel::Parallel));
    st.counters["pairs"] = static_cast<double>(f.size() * (f.size() - 1) / 2);
    st.counters["threads"] = thread_count();
}

// (n, p, samples): spinor(4,4) is small, spinor(8,8) is 16-dimensional
#define PAIR_ARGS Args({4, 4, 100})->Args({8, 8, 100})->Args({8, 8, 200})->Unit(benchmark::kMillisecond)

BENCHMARK(BM_PairsSerial)->PAIR_ARGS;
BENCHMARK(BM_PairsParallel)->PAIR_ARGS->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
