#include <benchmark/benchmark.h>

#include <vector>

#include "sdmc/algorithms.hpp"
#include "sdmc/coverage_kernel.hpp"
#include "sdmc/experiment.hpp"
#include "sdmc/scope.hpp"

namespace {

// Window of scopes recorded from a DE run, the shape sdmc-check works on.
struct Fixture {
    sdmc::ScopeTrace trace{sdmc::BoxDomain::cube(1, 0.0, 1.0), 0, {}};
    std::vector<const sdmc::BoxSet*> layers;

    Fixture() {
        sdmc::ExperimentConfig cfg;
        cfg.algorithm = sdmc::default_config(sdmc::AlgorithmId::de);
        cfg.function = sdmc::FunctionId::sphere;
        cfg.dim = 10;
        cfg.budget = 50 * 201;
        cfg.runs = 1;
        cfg.instrument.scope_trace = true;
        cfg.instrument.scope_from_generation = 100;
        trace = *sdmc::run_single(cfg, 0).scope;
        for (const auto& g : trace.generations) layers.push_back(&g);
    }
};

const Fixture& fixture() {
    static const Fixture f;
    return f;
}

void BM_FirstHitSerial(benchmark::State& state) {
    const auto& f = fixture();
    const auto rng = sdmc::RngStream(1, 2);
    const auto samples = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sdmc::first_hit_serial(f.layers, f.trace.domain, samples, rng));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_FirstHitParallel(benchmark::State& state) {
    const auto& f = fixture();
    const auto rng = sdmc::RngStream(1, 2);
    const auto samples = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sdmc::first_hit_parallel(f.layers, f.trace.domain, samples, rng));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Trials(benchmark::State& state) {
    sdmc::ExperimentConfig cfg;
    cfg.algorithm = sdmc::default_config(sdmc::AlgorithmId::slpso);
    cfg.function = sdmc::FunctionId::rastrigin;
    cfg.dim = 30;
    cfg.budget = 20000;
    cfg.runs = 8;
    for (auto _ : state) {
        if (state.range(0) == 0) {
            for (std::size_t r = 0; r < cfg.runs; ++r) benchmark::DoNotOptimize(sdmc::run_single(cfg, r));
        } else {
            benchmark::DoNotOptimize(sdmc::run_trials(cfg));
        }
    }
}

}  // namespace

BENCHMARK(BM_FirstHitSerial)->Arg(1 << 14)->Arg(1 << 17)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FirstHitParallel)->Arg(1 << 14)->Arg(1 << 17)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Trials)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
