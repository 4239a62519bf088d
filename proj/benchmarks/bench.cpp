#include <benchmark/benchmark.h>

#include "sglab/kolmogorov.hpp"
#include "sglab/models.hpp"
#include "sglab/simulate.hpp"

using namespace sglab;

namespace {

SpectralModel ou(std::size_t M) {
    std::vector<double> lam(M);
    for (std::size_t k = 1; k <= M; ++k) lam[k - 1] = static_cast<double>(k);
    return SpectralModel(lam);
}

void BM_pt_apply(benchmark::State& state) {
    SpectralModel m = ou(8);
    CylFunction f = make_cosine({1, 2}, {1.0, 0.7});
    HVec x(8, 0.2), z(8, 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(pt_apply(m, 0.5, z, f, x).value);
}
BENCHMARK(BM_pt_apply);

void BM_resolvent_point(benchmark::State& state) {
    SpectralModel m = ou(8);
    CylFunction f = make_cosine({1}, {1.2});
    HVec x(8, 0.0), z(8, 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(resolvent(m, 1.0, z, f, x).value);
}
BENCHMARK(BM_resolvent_point);

void BM_tabulate_resolvent(benchmark::State& state) {
    SpectralModel m = ou(8);
    CylFunction f = make_cosine({1}, {1.2});
    HVec z(8, 0.0);
    GridSpec spec;
    spec.points_per_axis = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(tabulate_resolvent(m, 1.0, z, f, spec).value.max_abs());
}
BENCHMARK(BM_tabulate_resolvent)->Arg(129)->Arg(513);

void BM_fixed_point_solve(benchmark::State& state) {
    SpectralModel m = ou(8);
    HVec z(8, 0.0);
    z[0] = 0.2;
    DriftPtr F = make_near_constant_drift(z, {1}, {0.15});
    CylFunction g = make_cosine({1}, {1.0});
    GridSpec spec;
    spec.points_per_axis = 257;
    for (auto _ : state)
        benchmark::DoNotOptimize(fixed_point_solve(m, 1.0, z, F, g, spec).residual);
}
BENCHMARK(BM_fixed_point_solve);

void BM_simulate_paths(benchmark::State& state) {
    SpectralModel m = ou(8);
    DriftPtr F = make_zero_drift(8);
    SimSpec spec;
    spec.T = 1.0;
    spec.dt = 1e-2;
    spec.m = 8;
    spec.n_paths = static_cast<std::size_t>(state.range(0));
    spec.x0 = HVec(8, 0.1);
    spec.snapshot_times = {1.0};
    for (auto _ : state) benchmark::DoNotOptimize(simulate(m, F, spec).data.size());
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_simulate_paths)->Arg(100)->Arg(1000);

void BM_burgers_drift(benchmark::State& state) {
    Burgers1D b = make_burgers1d(32, make_scalar_fn("linear-clip", {0.5}));
    HVec x(32, 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(burgers_drift(b, x)[0]);
}
BENCHMARK(BM_burgers_drift);

}  // namespace
