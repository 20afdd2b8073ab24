#include <benchmark/benchmark.h>

#include <random>

#include "mkg/dynamics.hpp"
#include "mkg/null_symbols.hpp"
#include "mkg/scenario.hpp"

namespace {

using namespace mkg;

ScalarField random_field(GridPtr g, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    ScalarField f = make_field(g, Rep::Fourier);
    const auto& mask = g->mask();
    for (std::int64_t i = 0; i < g->size(); ++i)
        if (mask[i]) f.v[i] = cplx(gauss(rng), gauss(rng));
    return f;
}

void BM_Transform(benchmark::State& state) {
    GridPtr g = make_grid(int(state.range(0)), 2.0 * 3.14159265358979323846);
    std::mt19937_64 rng(1);
    const ScalarField f = random_field(g, rng);
    for (auto _ : state) {
        ScalarField s = to_space(f);
        benchmark::DoNotOptimize(s.v.data());
    }
}
BENCHMARK(BM_Transform)->Arg(16)->Arg(32)->Arg(64);

void BM_DealiasedProduct(benchmark::State& state) {
    GridPtr g = make_grid(int(state.range(0)), 2.0 * 3.14159265358979323846);
    std::mt19937_64 rng(2);
    const ScalarField f = to_space(random_field(g, rng));
    const ScalarField h = to_space(random_field(g, rng));
    for (auto _ : state) {
        ScalarField p = pointwise_product(f, h);
        benchmark::DoNotOptimize(p.v.data());
    }
}
BENCHMARK(BM_DealiasedProduct)->Arg(16)->Arg(32);

void BM_SourceAssembly(benchmark::State& state) {
    ScenarioConfig cfg;
    cfg.n = int(state.range(0));
    cfg.preset = Preset::GaussianPulse;
    cfg.amplitude = 0.8;
    cfg.em_amplitude = 0.3;
    cfg.width = 0.8;
    GridPtr g = make_grid(cfg.n, cfg.L);
    const HalfWaveState s = initial_state(cfg, g);
    for (auto _ : state) {
        NonlinearityOutput nl = assemble_nonlinearity(s, NonlinearityForm::Decomposed);
        benchmark::DoNotOptimize(nl.M.v.data());
    }
}
BENCHMARK(BM_SourceAssembly)->Arg(16)->Arg(32);

void BM_Step(benchmark::State& state) {
    ScenarioConfig cfg;
    cfg.n = int(state.range(0));
    cfg.preset = Preset::GaussianPulse;
    cfg.amplitude = 0.8;
    cfg.em_amplitude = 0.3;
    cfg.width = 0.8;
    cfg.dt = 1e-3;
    GridPtr g = make_grid(cfg.n, cfg.L);
    const HalfWaveState s = initial_state(cfg, g);
    for (auto _ : state) {
        HalfWaveState s2 = step(s, cfg.integrator());
        benchmark::DoNotOptimize(s2.t);
    }
}
BENCHMARK(BM_Step)->Arg(16)->Arg(32);

void BM_SymbolBounds(benchmark::State& state) {
    for (auto _ : state) {
        auto rep = check_symbol_bounds(1.0, state.range(0), 5);
        benchmark::DoNotOptimize(rep.violations);
    }
}
BENCHMARK(BM_SymbolBounds)->Arg(10000);

} // namespace

BENCHMARK_MAIN();
