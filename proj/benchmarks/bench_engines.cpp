#include <benchmark/benchmark.h>

#include "predprey/engines.hpp"
#include "predprey/meanfield.hpp"
#include "predprey/rates.hpp"

using namespace predprey;

namespace {

EngineConfig short_run(double tau) {
    EngineConfig cfg;
    cfg.t_final = 10.0;
    cfg.tau = tau;
    cfg.seed = 99;
    return cfg;
}

void EnsembleHomogeneous(benchmark::State& state) {
    const auto n = state.range(0);
    const ModelParams p = ModelParams::table_homogeneous();
    const LatticeState s0 = LatticeState::homogeneous(n, n / 4, n / 2);
    const EngineConfig cfg = short_run(1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_ensemble(s0, p, cfg));
    }
    state.SetComplexityN(n);
}
BENCHMARK(EnsembleHomogeneous)->RangeMultiplier(4)->Range(256, 65536)->Complexity();

void DirectHomogeneous(benchmark::State& state) {
    const auto n = state.range(0);
    const ModelParams p = ModelParams::table_homogeneous();
    const LatticeState s0 = LatticeState::homogeneous(n, n / 4, n / 2);
    const EngineConfig cfg = short_run(1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_direct(s0, p, cfg));
    }
    state.SetComplexityN(n);
}
BENCHMARK(DirectHomogeneous)->RangeMultiplier(4)->Range(256, 65536)->Complexity();

void ClassicHomogeneous(benchmark::State& state) {
    const auto n = state.range(0);
    const ModelParams p = ModelParams::table_homogeneous();
    const LatticeState s0 = LatticeState::homogeneous(n, n / 4, n / 2);
    const EngineConfig cfg = short_run(1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_classic_mc(s0, p, cfg));
    }
    state.SetComplexityN(n);
}
BENCHMARK(ClassicHomogeneous)->RangeMultiplier(4)->Range(256, 4096)->Complexity();

void TauLeapingHomogeneous(benchmark::State& state) {
    const auto n = state.range(0);
    const ModelParams p = ModelParams::table_homogeneous();
    const LatticeState s0 = LatticeState::homogeneous(n, n / 4, n / 2);
    const EngineConfig cfg = short_run(1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_tau_leaping(s0, p, cfg));
    }
    state.SetComplexityN(n);
}
BENCHMARK(TauLeapingHomogeneous)->RangeMultiplier(4)->Range(256, 65536)->Complexity();

void EnsembleLattice(benchmark::State& state) {
    const auto mc = static_cast<int>(state.range(0));
    const ModelParams p = ModelParams::table_heterogeneous();
    LatticeState s0(GridDims{mc, 1}, 1000);
    s0.set_cell(mc / 2, 250, 500, 250);
    const EngineConfig cfg = short_run(1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_ensemble(s0, p, cfg));
    }
    state.SetComplexityN(mc);
}
BENCHMARK(EnsembleLattice)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void LatticeRates(benchmark::State& state) {
    const auto mc = static_cast<int>(state.range(0));
    const ModelParams p = ModelParams::table_heterogeneous();
    const LatticeState s0 = LatticeState::uniform(GridDims{mc, 1}, 300, 75, 150);
    const EventSystem es(GridDims{mc, 1}, p);
    std::vector<double> out;
    for (auto _ : state) {
        es.propensities(s0, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetComplexityN(mc);
}
BENCHMARK(LatticeRates)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void MeanfieldRk4Step(benchmark::State& state) {
    const auto mc = static_cast<int>(state.range(0));
    const ScaledParams sp = scale_params(ModelParams::table_heterogeneous());
    Field f0(GridDims{mc, 1}, 0.1, 0.2);
    SolverConfig cfg;
    cfg.dt = 0.5;
    cfg.t_final = 50.0;
    cfg.record_stride = 50.0;
    cfg.boundary = Boundary::zero_flux;
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate(f0, sp, cfg));
    }
    state.SetComplexityN(mc);
}
BENCHMARK(MeanfieldRk4Step)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

}  // namespace

BENCHMARK_MAIN();
