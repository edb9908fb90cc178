#include <benchmark/benchmark.h>

#include "lumenbell/lumenbell.hpp"

using namespace lumenbell;

namespace {

GridSpec grid_of(benchmark::State& state) {
    GridSpec g;
    g.n = static_cast<int>(state.range(0));
    return g;
}

void BM_Overlap(benchmark::State& state) {
    const GridSpec g = grid_of(state);
    const ScalarField a = eval_mode(ModeLabel::lg_p1, g);
    const ScalarField b = eval_rotated_mode(Degrees(30), g);
    for (auto _ : state) benchmark::DoNotOptimize(overlap(a, b));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.size()));
}
BENCHMARK(BM_Overlap)->Arg(64)->Arg(128)->Arg(256);

void BM_Synthesize(benchmark::State& state) {
    const GridSpec g = grid_of(state);
    const PureState psi = bell_state(BellKind::hr_vl);
    for (auto _ : state) benchmark::DoNotOptimize(synthesize(psi, g));
}
BENCHMARK(BM_Synthesize)->Arg(128)->Arg(256);

void BM_Cascade(benchmark::State& state) {
    const GridSpec g = grid_of(state);
    const VectorField f = synthesize(bell_state(BellKind::hh_vv), g);
    for (auto _ : state) benchmark::DoNotOptimize(cascade(f, Degrees(30), Degrees(45)));
}
BENCHMARK(BM_Cascade)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_GenerateVectorBeam(benchmark::State& state) {
    const GridSpec g = grid_of(state);
    for (auto _ : state) benchmark::DoNotOptimize(generate_vector_beam(g));
}
BENCHMARK(BM_GenerateVectorBeam)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_AnalyticSweep(benchmark::State& state) {
    const Source src = AnalyticSource{bell_state(BellKind::hh_vv)};
    const std::vector<double> thetas = default_theta_grid();
    for (auto _ : state) benchmark::DoNotOptimize(sweep(src, Degrees(0), thetas));
}
BENCHMARK(BM_AnalyticSweep);

void BM_FourSettingSearch(benchmark::State& state) {
    const Source src = AnalyticSource{depolarize(bell_state(BellKind::hh_vv), 0.9)};
    const std::vector<double> angles = optimal_setting_grid();
    for (auto _ : state) benchmark::DoNotOptimize(violation_report(src, FourSettingGrid{angles}));
}
BENCHMARK(BM_FourSettingSearch);

}  // namespace

BENCHMARK_MAIN();
