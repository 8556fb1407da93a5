#include <benchmark/benchmark.h>

#include "toda/darboux.hpp"
#include "toda/rng.hpp"

using namespace toda;

static void BM_SolveC(benchmark::State& state) {
    const SolitonParams p = SolitonParams::make(1.0, 0.5);
    const int half = static_cast<int>(state.range(0)) / 2;
    const LatticeWindow w(-half, half);
    const ModeBundle b = build_modes(0.0, 0.2, p, w);
    Rng rng(13);
    ComplexSeq f = rng.gaussian_seq(w, -10, 10);
    const ComplexSeq ker = shift_minus(b.tg_plus_star);
    const cplx coef = pairing(f, ker) / pairing(ker, ker);
    for (int i = 0; i < w.size(); ++i) f[i] -= coef * ker[i];
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_C(0.2, f, p, 0.0));
    }
}
BENCHMARK(BM_SolveC)->Arg(128)->Arg(256)->Arg(512);

static void BM_TriOpApply(benchmark::State& state) {
    const SolitonParams p = SolitonParams::make(1.0, 0.5);
    const int half = static_cast<int>(state.range(0)) / 2;
    const LatticeWindow w(-half, half);
    const DarbouxOps ops = build_ops(0.0, 0.2, p, w);
    Rng rng(13);
    const ComplexSeq f = rng.gaussian_seq(w, -half, half);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ops.C.apply(f));
    }
    state.SetItemsProcessed(state.iterations() * w.size());
}
BENCHMARK(BM_TriOpApply)->Arg(512);

static void BM_KernelSvd(benchmark::State& state) {
    const SolitonParams p = SolitonParams::make(1.0, 0.5);
    const int half = static_cast<int>(state.range(0)) / 2;
    const LatticeWindow w(-half, half);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel_svd_check(0.5 * p.eta_star, p, w));
    }
}
BENCHMARK(BM_KernelSvd)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
