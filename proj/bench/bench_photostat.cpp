// SPDX-License-Identifier: Apache-2.0
// Serial vs OpenMP timings for the kernels that carry the compute cost.
// Run with --benchmark_filter=... to narrow; thread count follows
// OMP_NUM_THREADS.
#include <benchmark/benchmark.h>

#include "photostat/convolve.hpp"
#include "photostat/count_pmf.hpp"
#include "photostat/emission.hpp"
#include "photostat/frames.hpp"
#include "photostat/grid.hpp"
#include "photostat/inference.hpp"
#include "photostat/rng.hpp"

using namespace photostat;

namespace {

void bm_single_mode_pmf_parallel(benchmark::State& state) {
    const int k_max = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            single_mode_electron_pmf(1.0, NonlinearityOrder(4), k_max));
    }
}
BENCHMARK(bm_single_mode_pmf_parallel)->Arg(1024)->Arg(4096);

void bm_single_mode_pmf_serial(benchmark::State& state) {
    const int k_max = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            single_mode_electron_pmf_serial(1.0, NonlinearityOrder(4), k_max));
    }
}
BENCHMARK(bm_single_mode_pmf_serial)->Arg(1024)->Arg(4096);

void bm_multimode_pmf(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            electron_count_pmf(2.6, NonlinearityOrder(4), m, 2048));
    }
}
BENCHMARK(bm_multimode_pmf)->Arg(1)->Arg(11)->Arg(57);

void bm_convolve_modes(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const NonlinearityOrder one(1);
    const double upper = suggested_lattice_upper(1.0, one, m, 1e-9);
    const auto single =
        discretize_lattice(1.0 / m, one, std::size_t(1) << 15, upper);
    for (auto _ : state) {
        benchmark::DoNotOptimize(convolve_modes(single, m, 1.0));
    }
}
BENCHMARK(bm_convolve_modes)->Arg(2)->Arg(8)->Arg(64);

void sweep_bench(benchmark::State& state, bool parallel) {
    PhotonSource src;
    src.kind = SourceKind::bsv;
    src.mode_count = 11;
    EmissionConfig cfg;
    cfg.coupling = 2.6;
    SweepConfig sweep;
    sweep.pulse_energies = {1.0};
    sweep.reference_energy = 1.0;
    sweep.pulses_per_point = state.range(0);
    sweep.seed = 9;
    for (auto _ : state) {
        benchmark::DoNotOptimize(parallel ? run_sweep(src, sweep, cfg)
                                          : run_sweep_serial(src, sweep, cfg));
    }
}

void bm_sweep_parallel(benchmark::State& state) { sweep_bench(state, true); }
BENCHMARK(bm_sweep_parallel)->Arg(40000);

void bm_sweep_serial(benchmark::State& state) { sweep_bench(state, false); }
BENCHMARK(bm_sweep_serial)->Arg(40000);

std::vector<Frame> bench_frames(int count) {
    SpotModel model;
    FrameGeometry geom;
    geom.min_separation_px = 24.0;
    std::vector<Frame> frames;
    frames.reserve(count);
    for (int i = 0; i < count; ++i) {
        Rng rng = derive_rng(4, 0, static_cast<std::uint64_t>(i));
        frames.push_back(generate_frame(i % 8, model, geom, rng));
    }
    return frames;
}

void bm_frame_stream_parallel(benchmark::State& state) {
    const auto frames = bench_frames(static_cast<int>(state.range(0)));
    SpotModel model;
    for (auto _ : state) {
        benchmark::DoNotOptimize(analyze_frame_stream(frames, model));
    }
}
BENCHMARK(bm_frame_stream_parallel)->Arg(64);

void bm_frame_stream_serial(benchmark::State& state) {
    const auto frames = bench_frames(static_cast<int>(state.range(0)));
    SpotModel model;
    for (auto _ : state) {
        benchmark::DoNotOptimize(analyze_frame_stream_serial(frames, model));
    }
}
BENCHMARK(bm_frame_stream_serial)->Arg(64);

void bm_mode_estimate(benchmark::State& state) {
    PhotonSource src;
    src.kind = SourceKind::bsv;
    src.mode_count = 3;
    EmissionConfig cfg;
    cfg.coupling = 1.0;
    SweepConfig sweep;
    sweep.pulse_energies = {1.0};
    sweep.reference_energy = 1.0;
    sweep.pulses_per_point = 10000;
    sweep.seed = 77;
    const auto hist = run_sweep(src, sweep, cfg)[0].histogram;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            estimate_mode_count(hist, NonlinearityOrder(4), 1, 8));
    }
}
BENCHMARK(bm_mode_estimate);

}  // namespace

BENCHMARK_MAIN();
