#include <benchmark/benchmark.h>

#include "zeroinit/hadamard.hpp"
#include "zeroinit/rng.hpp"

using namespace zeroinit;

static Vector random_signal(std::size_t n) {
    SplitMix64 rng(n * 2654435761u + 1);
    Vector v(n);
    for (double& x : v) x = rng.next_normal();
    return v;
}

static void BM_fwht(benchmark::State& state) {
    const std::size_t n = std::size_t{1} << state.range(0);
    Vector v = random_signal(n);
    for (auto _ : state) {
        Vector work = v;
        fwht_in_place(work);
        benchmark::DoNotOptimize(work.data());
    }
    state.SetComplexityN(static_cast<std::int64_t>(n));
}
BENCHMARK(BM_fwht)->DenseRange(4, 14)->Complexity(benchmark::oNLogN);

static void BM_dense_hadamard_multiply(benchmark::State& state) {
    const std::size_t m = static_cast<std::size_t>(state.range(0));
    const std::size_t n = std::size_t{1} << m;
    const Matrix h = hadamard_matrix(m);
    const Vector v = random_signal(n);
    for (auto _ : state) {
        Vector out = matvec(h, v);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetComplexityN(static_cast<std::int64_t>(n));
}
BENCHMARK(BM_dense_hadamard_multiply)->DenseRange(4, 11)->Complexity(benchmark::oNSquared);

BENCHMARK_MAIN();
