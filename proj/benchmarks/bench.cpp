#include <benchmark/benchmark.h>

#include <cmlab/cartan.hpp>
#include <cmlab/classify.hpp>
#include <cmlab/divpoly.hpp>
#include <cmlab/oracle.hpp>
#include <cmlab/subgrp.hpp>

using namespace cmlab;

static void BM_CartanClosure(benchmark::State& st) {
    const u32 level = u32(st.range(0));
    const auto s = cartan_params(OrderDesc{-7, 1}, level);
    const Subgroup c = cartan_group(s);
    const auto gens = c.generators();
    for (auto _ : st) benchmark::DoNotOptimize(Subgroup::closure(gens, level).order());
    st.counters["order"] = double(c.order());
}
BENCHMARK(BM_CartanClosure)->Arg(27)->Arg(64)->Arg(81)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_BruteNormalizer(benchmark::State& st) {
    const u32 level = u32(st.range(0));
    const Subgroup c = cartan_group(cartan_params(OrderDesc{-7, 1}, level));
    for (auto _ : st) benchmark::DoNotOptimize(brute_normalizer(c).order());
}
BENCHMARK(BM_BruteNormalizer)->Arg(8)->Arg(9)->Arg(13)->Arg(27)->Unit(benchmark::kMillisecond);

static void BM_AllSubgroups(benchmark::State& st) {
    const Subgroup c = cartan_group(cartan_params(OrderDesc{-4, 1}, u32(st.range(0))));
    for (auto _ : st) benchmark::DoNotOptimize(all_subgroups(c).size());
}
BENCHMARK(BM_AllSubgroups)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_Classify(benchmark::State& st) {
    const OrderDesc o{st.range(0), 1};
    const u64 p = u64(st.range(1));
    const int n = int(st.range(2));
    for (auto _ : st) benchmark::DoNotOptimize(classify(o, p, n).size());
}
BENCHMARK(BM_Classify)->Args({-3, 3, 2})->Args({-3, 3, 3})->Args({-4, 2, 4})->Args({-7, 5, 2})->Args({-8, 2, 5})
    ->Unit(benchmark::kMillisecond);

static void BM_DivisionPoly(benchmark::State& st) {
    const int m = int(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(division_poly({0, 1}, {0, 1}, m).x_degree());
}
BENCHMARK(BM_DivisionPoly)->Arg(4)->Arg(8)->Arg(12);

BENCHMARK_MAIN();
