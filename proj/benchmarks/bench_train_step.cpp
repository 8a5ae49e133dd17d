#include <benchmark/benchmark.h>

#include "zeroinit/dataset.hpp"
#include "zeroinit/net.hpp"

using namespace zeroinit;

static void BM_full_batch_gradient(benchmark::State& state) {
    NetworkSpec spec;
    spec.layer_dims = {8, 64, 64, 64, 4};
    spec.nonlinearity = Nonlinearity::Relu;
    spec.init = InitScheme::partial_identity_only();
    Network net = build(spec);
    const Dataset data = synthetic_teacher(7, 8, 4, 256, 0.1);
    for (auto _ : state) {
        auto grads = backward(net, data);
        benchmark::DoNotOptimize(grads.data());
    }
}
BENCHMARK(BM_full_batch_gradient);

static void BM_minibatch_step_mnist_shape(benchmark::State& state) {
    NetworkSpec spec;
    spec.layer_dims = {784, 2048, 2048, 10};
    spec.nonlinearity = Nonlinearity::Relu;
    spec.init = InitScheme::zero();
    Network net = build(spec);
    const Dataset data = synthetic_teacher(11, 784, 10, 64, 0.0);
    for (auto _ : state) {
        auto grads = backward(net, data, Reduction::Mean);
        benchmark::DoNotOptimize(grads.data());
    }
}
BENCHMARK(BM_minibatch_step_mnist_shape);

BENCHMARK_MAIN();
