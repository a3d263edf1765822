#include <benchmark/benchmark.h>

#include "hvlab/bell_algebra.hpp"
#include "hvlab/bell_sim.hpp"
#include "hvlab/boolean_model.hpp"
#include "hvlab/rng.hpp"

namespace {

using namespace hvlab;

void BM_PhiloxBlock(benchmark::State& state) {
    std::array<std::uint32_t, 4> counter = {1, 2, 3, 4};
    const std::array<std::uint32_t, 2> key = {56, 712};
    for (auto _ : state) {
        counter = philox4x32(counter, key);
        benchmark::DoNotOptimize(counter);
    }
}
BENCHMARK(BM_PhiloxBlock);

void BM_IntervalStreamUniform(benchmark::State& state) {
    std::int64_t interval = 0;
    double sink = 0.0;
    for (auto _ : state) {
        Rng rng = Rng::for_interval(42, interval++, StreamDomain::BellInterval);
        sink += rng.uniform();
    }
    benchmark::DoNotOptimize(sink);
}
BENCHMARK(BM_IntervalStreamUniform);

void BM_RunBell(benchmark::State& state) {
    RunConfig cfg;
    cfg.alpha = 0.0;
    cfg.beta = 0.4;
    cfg.seed = 7;
    cfg.n_intervals = state.range(0);
    cfg.discipline =
        state.range(1) == 0 ? Discipline::Bernoulli : Discipline::Accumulator;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_bell(cfg));
        cfg.seed += 1;
    }
    state.SetItemsProcessed(state.iterations() * cfg.n_intervals);
}
BENCHMARK(BM_RunBell)->Args({100'000, 0})->Args({100'000, 1});

void BM_RunBoolean(benchmark::State& state) {
    RunConfig cfg;
    cfg.alpha = 0.0;
    cfg.beta = 0.4;
    cfg.seed = 7;
    cfg.n_intervals = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_boolean_bell(cfg));
        cfg.seed += 1;
    }
    state.SetItemsProcessed(state.iterations() * cfg.n_intervals);
}
BENCHMARK(BM_RunBoolean)->Arg(100'000);

void BM_GenerateProject(benchmark::State& state) {
    GeneratorConfig cfg;
    cfg.samples_per_interval = static_cast<int>(state.range(0));
    std::int64_t interval = 0;
    double sink = 0.0;
    for (auto _ : state) {
        Rng rng = Rng::for_interval(3, interval++, StreamDomain::Generic);
        const IntervalHV hv = generate_interval(rng, cfg);
        sink += modulus_integral(project(hv, 0.3).parallel);
    }
    benchmark::DoNotOptimize(sink);
}
BENCHMARK(BM_GenerateProject)->Arg(1)->Arg(16);

void BM_GramDraw(benchmark::State& state) {
    GeneratorConfig gen;
    gen.modulus_mode = ModulusMode::UniformIntegral;
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gram_average(seed++, 10'000, gen));
    }
    state.SetItemsProcessed(state.iterations() * 10'000);
}
BENCHMARK(BM_GramDraw);

}  // namespace

BENCHMARK_MAIN();
