#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "meanclt/finite_dist.hpp"
#include "meanclt/functionals.hpp"
#include "meanclt/harness.hpp"
#include "meanclt/mixtures.hpp"
#include "meanclt/wasserstein.hpp"
#include "meanclt/zero_bias.hpp"

namespace {

meanclt::FiniteDist rademacher() {
    return meanclt::FiniteDist::from_points({-1.0, 1.0}, {0.5, 0.5});
}

meanclt::FiniteDist lattice_three_point() {
    return meanclt::FiniteDist::from_points({-1.5, 0.5, 1.5},
                                            {7.0 / 24.0, 15.0 / 24.0, 2.0 / 24.0});
}

void BM_iid_sum_rademacher(benchmark::State& state) {
    const auto g = rademacher();
    for (auto _ : state) {
        auto law = meanclt::iid_standardized_sum(g, state.range(0));
        benchmark::DoNotOptimize(law);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_iid_sum_rademacher)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_iid_sum_three_point(benchmark::State& state) {
    const auto g = lattice_three_point();
    for (auto _ : state) {
        auto law = meanclt::iid_standardized_sum(g, state.range(0));
        benchmark::DoNotOptimize(law);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_iid_sum_three_point)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_w1_step_normal(benchmark::State& state) {
    const auto law = meanclt::iid_standardized_sum(rademacher(), state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(meanclt::w1_step_normal(law));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_w1_step_normal)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_b_functional(benchmark::State& state) {
    std::mt19937_64 rng(42);
    const auto law = meanclt::random_standardized_law(rng, state.range(0), state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(meanclt::b_functional(law));
    }
}
BENCHMARK(BM_b_functional)->Arg(3)->Arg(5)->Arg(8);

void BM_a_functional_lattice(benchmark::State& state) {
    const auto law = lattice_three_point();
    for (auto _ : state) {
        benchmark::DoNotOptimize(meanclt::a_functional(law));
    }
}
BENCHMARK(BM_a_functional_lattice);

void BM_search_d3(benchmark::State& state) {
    meanclt::D3GridSpec spec;
    const int steps = static_cast<int>(state.range(0));
    spec.x = {-3.0, -0.1, steps};
    spec.z = {0.1, 3.0, steps};
    spec.alpha = {0.0, 1.0, steps};
    for (auto _ : state) {
        benchmark::DoNotOptimize(meanclt::search_d3(spec, 1));
    }
}
BENCHMARK(BM_search_d3)->Arg(10)->Arg(20);

void BM_reduce_to_d3(benchmark::State& state) {
    std::mt19937_64 rng(7);
    const auto law = meanclt::random_standardized_law(rng, state.range(0), state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(meanclt::reduce_to_d3(law));
    }
}
BENCHMARK(BM_reduce_to_d3)->Arg(5)->Arg(8)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
