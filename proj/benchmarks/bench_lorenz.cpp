#include <benchmark/benchmark.h>

#include <cmath>

#include "lorenz/lorenz.hpp"

using namespace lorenz;

namespace {

ScenarioSpec clayton_scenario(std::size_t n) {
    ScenarioSpec s;
    s.F1 = MarginalSpec::sinewave(3, 0.5);
    s.F2 = MarginalSpec::gamma(2, 1);
    s.copula = CopulaSpec::clayton(2);
    s.grid_n = n;
    s.n_max = 0;
    return s;
}

void BM_InitState(benchmark::State& st) {
    const auto spec = clayton_scenario(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(init_state(spec));
}
BENCHMARK(BM_InitState)->Arg(201)->Arg(1001)->Unit(benchmark::kMillisecond);

void BM_Step(benchmark::State& st) {
    const auto s0 = init_state(clayton_scenario(static_cast<std::size_t>(st.range(0))));
    for (auto _ : st) benchmark::DoNotOptimize(step(s0));
}
BENCHMARK(BM_Step)->Arg(101)->Arg(501)->Arg(1001)->Arg(2001)->Unit(benchmark::kMillisecond);

void BM_Measure(benchmark::State& st) {
    auto spec = clayton_scenario(1001);
    spec.n_max = 3;
    const auto res = iterate(spec);
    for (auto _ : st) benchmark::DoNotOptimize(measure(res.states, 3));
}
BENCHMARK(BM_Measure)->Unit(benchmark::kMillisecond);

void BM_Classify(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(classify_tp2_rr2(CopulaSpec::gaussian(-0.8), n));
}
BENCHMARK(BM_Classify)->Arg(201)->Arg(1001)->Unit(benchmark::kMillisecond);

void BM_StepUpperMarginal(benchmark::State& st) {
    const auto g = GridCdf::tabulate([](double x) { return x * x * x; }, static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(step_upper_marginal(g));
}
BENCHMARK(BM_StepUpperMarginal)->Arg(1001)->Arg(10001);

}  // namespace

BENCHMARK_MAIN();
