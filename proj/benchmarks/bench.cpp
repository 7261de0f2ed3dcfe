#include <benchmark/benchmark.h>

#include <complex>

#include "mvdecay/chi.hpp"
#include "mvdecay/multiplicative.hpp"
#include "mvdecay/region.hpp"
#include "mvdecay/sieve.hpp"
#include "mvdecay/volterra.hpp"

using namespace mvdecay;

static void BM_support_average(benchmark::State& state) {
    const auto region = make_disc(0.7);
    double a = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(hbar(region, a));
        a = a < 0.9 ? a + 1e-4 : 0.1;
    }
}
BENCHMARK(BM_support_average);

static void BM_decay_exponent(benchmark::State& state) {
    const auto region = make_roots_of_unity(int(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(kappa(region));
}
BENCHMARK(BM_decay_exponent)->Arg(3)->Arg(10)->Arg(40);

static void BM_region_constants(benchmark::State& state) {
    const auto region = make_sector(1.5707963267948966);
    for (auto _ : state) benchmark::DoNotOptimize(region_constants(region));
}
BENCHMARK(BM_region_constants);

static void BM_sigma_march(benchmark::State& state) {
    const auto chi = chi_indicator_01();
    const double h = 1.0 / double(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_sigma(chi, 10.0, h, false));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_sigma_march)->Arg(256)->Arg(1024)->Arg(4096);

static void BM_sigma_march_random(benchmark::State& state) {
    const auto chi = chi_random_in_region(make_disc(0.7), 1, 6, 8.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_sigma(chi, 10.0, 1.0 / 1024, false));
}
BENCHMARK(BM_sigma_march_random);

static void BM_sieve_build(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(build_sieve(uint64_t(state.range(0))));
}
BENCHMARK(BM_sieve_build)->Arg(100000)->Arg(1000000);

static void BM_partial_sums(benchmark::State& state) {
    const auto sieve = build_sieve(uint64_t(state.range(0)));
    const auto f = mult_liouville();
    for (auto _ : state)
        benchmark::DoNotOptimize(partial_sums(f, sieve, {sieve.limit}));
}
BENCHMARK(BM_partial_sums)->Arg(100000)->Arg(1000000);

static void BM_twist_scan(benchmark::State& state) {
    const auto sieve = build_sieve(100000);
    const auto f = mult_liouville();
    for (auto _ : state)
        benchmark::DoNotOptimize(halasz_functionals(f, sieve, 4.0));
}
BENCHMARK(BM_twist_scan);

BENCHMARK_MAIN();
