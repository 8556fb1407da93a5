#include <benchmark/benchmark.h>

#include "toda/modes.hpp"

using namespace toda;

static void BM_BuildModes(benchmark::State& state) {
    const SolitonParams p = SolitonParams::make(1.0, 0.5);
    const int half = static_cast<int>(state.range(0)) / 2;
    const LatticeWindow w(-half, half);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_modes(0.7, 0.2, p, w));
    }
    state.SetItemsProcessed(state.iterations() * w.size());
}
BENCHMARK(BM_BuildModes)->Arg(128)->Arg(256)->Arg(512);

static void BM_ProjectSecular(benchmark::State& state) {
    const SolitonParams p = SolitonParams::make(1.0, 0.5);
    const int half = static_cast<int>(state.range(0)) / 2;
    const LatticeWindow w(-half, half);
    const ModeBundle b = build_modes(0.0, 0.2, p, w);
    ModeState s;
    s.eta = 0.2;
    s.rep = Representation::QSoliton;
    s.q = b.g1;
    s.p = b.dt_g1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(project_secular(s, b));
    }
}
BENCHMARK(BM_ProjectSecular)->Arg(128)->Arg(512);
