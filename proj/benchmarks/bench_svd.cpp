#include <benchmark/benchmark.h>

#include "zeroinit/rng.hpp"
#include "zeroinit/svd.hpp"

using namespace zeroinit;

static Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    SplitMix64 rng(seed);
    Matrix m(rows, cols);
    for (double& v : m.data()) v = rng.next_normal();
    return m;
}

static void BM_svd_full(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const Matrix a = random_matrix(n, n, 5);
    for (auto _ : state) {
        SvdResult r = svd(a);
        benchmark::DoNotOptimize(r.singular_values.data());
    }
}
BENCHMARK(BM_svd_full)->Arg(16)->Arg(32)->Arg(64)->Arg(128);

static void BM_singular_values_only(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const Matrix a = random_matrix(4 * n, n, 6);
    for (auto _ : state) {
        Vector s = singular_values(a);
        benchmark::DoNotOptimize(s.data());
    }
}
BENCHMARK(BM_singular_values_only)->Arg(32)->Arg(64)->Arg(128)->Arg(256);

BENCHMARK_MAIN();
