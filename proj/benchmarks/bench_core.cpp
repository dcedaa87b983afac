#include <benchmark/benchmark.h>

#include "etscope/extraction.hpp"
#include "etscope/harness.hpp"
#include "etscope/presets.hpp"
#include "etscope/waveform.hpp"

using namespace etscope;

static void BM_SteadyStateOccupancy(benchmark::State& state) {
    const TrapModel trap{20e-9, 5e-6, StressPhase::OffState};
    double ts = 1e-7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(steady_state_occupancy(trap, ts, 9e-7));
        ts += 1e-12;  // defeat value caching
    }
}
BENCHMARK(BM_SteadyStateOccupancy);

static void BM_WaveformEval(benchmark::State& state) {
    const Preset p = preset(DeviceKind::GanEmode);
    DriveConfig drive = p.drive;
    drive.f_s_hz = 100e3;
    const WaveformModel model(p.device, drive);
    double t = 0.0;
    const double step = model.period_s() / 1024.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(model.eval_periodic(t));
        t += step;
    }
}
BENCHMARK(BM_WaveformEval);

static void BM_Acquire(benchmark::State& state) {
    const Preset p = preset(DeviceKind::GanEmode);
    DriveConfig drive = p.drive;
    drive.f_s_hz = 100e3;
    const WaveformModel model(p.device, drive);
    const PeriodicSource src = make_source(model);
    const EtSchedule schedule =
        make_schedule(drive.period_s(), static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(acquire(
            src, schedule, p.adc,
            {Channel::GateV, Channel::DrainV, Channel::DrainI}, 1));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * 3);
}
BENCHMARK(BM_Acquire)->Arg(1000)->Arg(20000)->Arg(200000);

static void BM_RunPoint(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            run_point(DeviceKind::GanEmode, 100e3, 20000, 1));
    }
}
BENCHMARK(BM_RunPoint);

BENCHMARK_MAIN();
