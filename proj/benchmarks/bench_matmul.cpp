#include <benchmark/benchmark.h>

#include "zeroinit/matrix.hpp"
#include "zeroinit/rng.hpp"

using namespace zeroinit;

static Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    SplitMix64 rng(seed);
    Matrix m(rows, cols);
    for (double& v : m.data()) v = rng.next_normal();
    return m;
}

static void BM_matmul_square(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const Matrix a = random_matrix(n, n, 1);
    const Matrix b = random_matrix(n, n, 2);
    for (auto _ : state) {
        Matrix c = matmul(a, b);
        benchmark::DoNotOptimize(c.data().data());
    }
    state.counters["gflops"] = benchmark::Counter(
        2.0 * n * n * n * state.iterations() / 1e9, benchmark::Counter::kIsRate);
}
BENCHMARK(BM_matmul_square)->Arg(64)->Arg(128)->Arg(256)->Arg(512)->Arg(1024);

static void BM_matmul_mnist_step_shape(benchmark::State& state) {
    // The dominant product of a batch-64 training step on the MNIST network.
    const Matrix a = random_matrix(64, 784, 3);
    const Matrix b = random_matrix(784, 2048, 4);
    for (auto _ : state) {
        Matrix c = matmul(a, b);
        benchmark::DoNotOptimize(c.data().data());
    }
    state.counters["gflops"] = benchmark::Counter(
        2.0 * 64 * 784 * 2048 * state.iterations() / 1e9, benchmark::Counter::kIsRate);
}
BENCHMARK(BM_matmul_mnist_step_shape);

BENCHMARK_MAIN();
