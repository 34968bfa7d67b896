#include "hpsusp/estimator.hpp"
#include "hpsusp/lookup_table.hpp"
#include "hpsusp/oracle.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

using namespace hpsusp;

namespace {

struct Fixture {
    RunConfig rc = bench_prototype(30.0);
    LookupTable table;
    PressureTrace trace;

    Fixture() {
        table = build_table(rc.suspension, rc.table.frequencies_hz, rc.table.dt, BuildOptions::from(rc.table));
        trace = simulate_suspension(Excitation::sinusoid(7.5e-3, 5.0, 60.0), rc.suspension, rc.table.dt)
                    .pressure_trace(30.0);
    }
};

const Fixture& fx() {
    static const Fixture f;
    return f;
}

void BM_Query(benchmark::State& state) {
    const Fixture& f = fx();
    const double omega = 2.0 * std::numbers::pi * 5.0;
    std::size_t i = 1;
    for (auto _ : state) {
        const double p = f.trace.samples[i];
        benchmark::DoNotOptimize(query(f.table, p, p - f.trace.samples[i - 1], omega));
        if (++i == f.trace.samples.size()) i = 1;
    }
}
BENCHMARK(BM_Query);

void BM_LookupSeries(benchmark::State& state) {
    const Fixture& f = fx();
    const FrequencyMode mode = state.range(0) ? FrequencyMode::tracking()
                                              : FrequencyMode::fixed(2.0 * std::numbers::pi * 5.0);
    for (auto _ : state) benchmark::DoNotOptimize(estimate_series(f.table, f.trace, mode));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.trace.samples.size()));
}
BENCHMARK(BM_LookupSeries)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Iterative(benchmark::State& state) {
    const Fixture& f = fx();
    EstimatorOptions o;
    if (state.range(0)) o.frequency_hz = 5.0;
    for (auto _ : state) benchmark::DoNotOptimize(run(f.trace, f.rc.suspension, o));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.trace.samples.size()));
}
BENCHMARK(BM_Iterative)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_BuildTable(benchmark::State& state) {
    const RunConfig& rc = fx().rc;
    for (auto _ : state)
        benchmark::DoNotOptimize(build_table(rc.suspension, rc.table.frequencies_hz, rc.table.dt,
                                             BuildOptions::from(rc.table)));
}
BENCHMARK(BM_BuildTable)->Unit(benchmark::kMillisecond)->Iterations(3);

} // namespace

// benchmark_main ships as an LTO archive tied to another compiler build.
BENCHMARK_MAIN();
