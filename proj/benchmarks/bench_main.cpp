// Micro-benchmarks for the hot paths: per-cell bound evaluation (the heatmap
// inner loop), path construction, amplifier distortion, and ambiguity
// profiles. Run with --benchmark_filter=<regex> to select a subset.
#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "isac/bounds.hpp"
#include "isac/channel.hpp"
#include "isac/impairments.hpp"
#include "isac/rng.hpp"
#include "isac/scenario.hpp"
#include "isac/waveform.hpp"

using namespace isac;

namespace {

Scene indoor_scene() {
    ScenarioParams p = ScenarioParams::defaults_for(ScenarioId::indoor_1);
    p.grid_nx = 4;
    p.grid_ny = 4;
    return make_scene(ScenarioId::indoor_1, p);
}

Scene scene_with_target(double x, double y) {
    ScenarioParams p = ScenarioParams::defaults_for(ScenarioId::indoor_1);
    p.grid_nx = 4;
    p.grid_ny = 4;
    p.target_x_m = x;
    p.target_y_m = y;
    return make_scene(ScenarioId::indoor_1, p);
}

void bm_build_pathset(benchmark::State& state) {
    const Scene scene = indoor_scene();
    const WaveformConfig cfg = preset(Band::fr2_60ghz);
    for (auto _ : state) {
        const PathSet ps = build_pathset(scene, cfg, scene.tx_index, scene.rx_index);
        benchmark::DoNotOptimize(ps.paths.size());
    }
}
BENCHMARK(bm_build_pathset);

void bm_cell_bound(benchmark::State& state) {
    // One full heatmap cell: paths -> Fisher information -> position bound.
    const Scene scene = scene_with_target(4.0, 2.0);
    const WaveformConfig cfg = preset(Band::fr2_60ghz);
    for (auto _ : state) {
        const PathSet ps = build_pathset(scene, cfg, scene.tx_index, scene.rx_index);
        const ChannelFim cf = channel_fim(ps, cfg);
        const PositionBound pb = position_efim(cf, ps, scene, 0);
        benchmark::DoNotOptimize(pb.peb_m);
    }
}
BENCHMARK(bm_cell_bound);

void bm_channel_fim(benchmark::State& state) {
    const Scene scene = scene_with_target(4.0, 2.0);
    const WaveformConfig cfg = preset(Band::fr2_60ghz);
    const PathSet ps = build_pathset(scene, cfg, scene.tx_index, scene.rx_index);
    for (auto _ : state) {
        const ChannelFim cf = channel_fim(ps, cfg);
        benchmark::DoNotOptimize(cf.fim(0, 0));
    }
}
BENCHMARK(bm_channel_fim);

void bm_apply_pa(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(7);
    std::vector<std::complex<double>> x(static_cast<std::size_t>(n));
    for (auto& v : x) v = {rng.normal(), rng.normal()};
    PaModel pa;
    pa.backoff_db = 6.0;
    std::vector<std::complex<double>> y;
    for (auto _ : state) {
        y = apply_pa(x, pa);
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(bm_apply_pa)->Arg(4096);

void bm_range_ambiguity_profile(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(11);
    std::vector<std::complex<double>> tx(static_cast<std::size_t>(n)),
        rx(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < tx.size(); ++k) {
        tx[k] = {rng.normal(), rng.normal()};
        rx[k] = tx[k] * (1.0 + 0.01 * rng.normal());
    }
    for (auto _ : state) {
        const RangeAmbiguityProfile prof = range_ambiguity_profile(tx, rx);
        benchmark::DoNotOptimize(prof.db.data());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(bm_range_ambiguity_profile)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
