// Serial vs OpenMP filtered join over a random network behaviour.
#include <behave/generators.hpp>
#include <behave/kernels.hpp>

#include <benchmark/benchmark.h>

#include <omp.h>

namespace {

using namespace behave;

struct JoinInput {
    Behaviour network;
    Behaviour first;
    Behaviour second;
};

// Network over x, y, z with alphabets of size `k` and horizon 2; roughly
// density * k^6 rows survive.
JoinInput make_input(int k, double density) {
    std::vector<Symbol> alphabet;
    for (int s = 0; s < k; ++s) alphabet.emplace_back(s);
    const SignalVariable x("x", alphabet), y("y", alphabet), z("z", alphabet);
    gen::Rng rng(42);
    JoinInput in;
    in.network = gen::random_behaviour(SignalSpace({x, y, z}, 2), density, rng);
    in.first = gen::random_behaviour(SignalSpace({x}, 2), 0.7, rng);
    in.second = gen::random_behaviour(SignalSpace({y, z}, 2), 0.7, rng);
    return in;
}

void BM_FilterSerial(benchmark::State& state) {
    const JoinInput in = make_input(static_cast<int>(state.range(0)), 0.5);
    const kernels::FilterPlan plan(in.network, {&in.first, &in.second});
    for (auto _ : state) benchmark::DoNotOptimize(kernels::filter_serial(plan));
    state.counters["network_rows"] = static_cast<double>(in.network.size());
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(in.network.size()));
}

void BM_FilterParallel(benchmark::State& state) {
    const JoinInput in = make_input(static_cast<int>(state.range(0)), 0.5);
    const kernels::FilterPlan plan(in.network, {&in.first, &in.second});
    for (auto _ : state) benchmark::DoNotOptimize(kernels::filter_parallel(plan));
    state.counters["network_rows"] = static_cast<double>(in.network.size());
    state.counters["threads"] = omp_get_max_threads();
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(in.network.size()));
}

}  // namespace

BENCHMARK(BM_FilterSerial)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FilterParallel)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
