#include <benchmark/benchmark.h>

#include "drxsim/radio_fsm.hpp"
#include "drxsim/sim_engine.hpp"
#include "drxsim/trace_hygiene.hpp"
#include "drxsim/workload.hpp"

namespace {

drxsim::PowerProfile bench_profile() {
    drxsim::PowerProfile p;
    p.p_cr_w = 1.2;
    p.short_drx = {0.02, 0.004, 0.8, 0.025};
    p.long_drx = {0.32, 0.032, 0.8, 0.02};
    p.idle = {1.28, 0.032, 0.5, 0.008};
    p.timers = {0.55, 1.2, 3.0};
    return p;
}

void BM_DutyCycleEnergyExact(benchmark::State& state) {
    const drxsim::DutyCycle dc{0.02, 0.004, 0.8, 0.025};
    double duration = 0.123456;
    for (auto _ : state) {
        benchmark::DoNotOptimize(drxsim::duty_cycle_energy_exact(dc, duration, 0.0017));
        duration += 1e-9;
    }
}
BENCHMARK(BM_DutyCycleEnergyExact);

void BM_BuildStateTimeline(benchmark::State& state) {
    const auto events = static_cast<std::size_t>(state.range(0));
    drxsim::EventTrace trace;
    for (std::size_t i = 0; i < events; ++i)
        trace.events.push_back({static_cast<double>(i) * 0.8, drxsim::Direction::down, 1460});
    trace.horizon_s = static_cast<double>(events) * 0.8 + 30.0;
    const drxsim::FsmTimers timers{0.55, 1.2, 3.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(drxsim::build_state_timeline(trace, timers, trace.horizon_s));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(events));
}
BENCHMARK(BM_BuildStateTimeline)->Arg(1000)->Arg(10000);

void BM_SlotMinMean(benchmark::State& state) {
    drxsim::SampleSeries series;
    series.unit = "A";
    for (int i = 0; i <= 32400; ++i)
        series.samples.push_back({static_cast<double>(i), 0.4 + 0.001 * (i % 97)});
    for (auto _ : state) {
        benchmark::DoNotOptimize(drxsim::slot_min_mean(series, 3600.0));
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(series.samples.size()));
}
BENCHMARK(BM_SlotMinMean);

void BM_SimulateDownload(benchmark::State& state) {
    drxsim::Scenario scenario;
    scenario.label = "bench";
    scenario.profile = bench_profile();
    scenario.workload = {drxsim::Download{20.0, 4 * 1024 * 1024}, 3600.0};
    scenario.path = {0.13, 0.0, 2.5e6, 1460, 8};
    for (auto _ : state) {
        benchmark::DoNotOptimize(drxsim::simulate(scenario));
    }
}
BENCHMARK(BM_SimulateDownload);

}  // namespace

BENCHMARK_MAIN();
