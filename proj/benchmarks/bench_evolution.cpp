#include <benchmark/benchmark.h>

#include "toda/evolution.hpp"
#include "toda/rng.hpp"

using namespace toda;

static ModeState make_state(int width, double eta, Representation rep) {
    const LatticeWindow w(-width / 2, width / 2);
    Rng rng(9);
    ModeState s;
    s.eta = eta;
    s.rep = rep;
    s.q = rng.gaussian_seq(w, -10, 10);
    s.p = rng.gaussian_seq(w, -10, 10);
    return s;
}

static void BM_EvolveOdeUnitTime(benchmark::State& state) {
    const SolitonParams p = SolitonParams::make(1.0, 0.5);
    const ModeState s = make_state(static_cast<int>(state.range(0)), 0.2,
                                   Representation::QSoliton);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve_ode(s, 1.0, 1e-2, p));
    }
    state.SetItemsProcessed(state.iterations() * 100 * s.q.size());
}
BENCHMARK(BM_EvolveOdeUnitTime)->Arg(128)->Arg(256)->Arg(512);

static void BM_FreeExact(benchmark::State& state) {
    const ModeState s = make_state(static_cast<int>(state.range(0)), 0.2,
                                   Representation::QFree);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve_free_exact(s, 10.0, 0.5));
    }
}
BENCHMARK(BM_FreeExact)->Arg(128)->Arg(256)->Arg(512);
