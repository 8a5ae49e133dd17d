#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "zeroinit/init.hpp"
#include "zeroinit/prune.hpp"

using namespace zeroinit;

namespace {

Network small_net(std::uint64_t seed) {
    NetworkSpec spec;
    spec.layer_dims = {4, 8, 3};
    spec.nonlinearity = Nonlinearity::Relu;
    spec.init = InitScheme::fan_in(1.0, seed);
    return build(spec);
}

Dataset one_hot_data(std::size_t p, std::size_t n_x, std::size_t classes,
                     std::uint64_t seed) {
    Dataset data;
    data.inputs = oracles::random_matrix(p, n_x, seed);
    data.targets = Matrix(p, classes);
    SplitMix64 rng(seed * 31 + 1);
    for (std::size_t i = 0; i < p; ++i) {
        data.targets(i, rng.next_u64() % classes) = 1.0;
    }
    return data;
}

}  // namespace

TEST_CASE("magnitude prune: fraction 0 is the identity") {
    const Network net = small_net(1);
    const auto [pruned, mask] = magnitude_prune(net, 0.0);
    for (std::size_t l = 0; l < net.weights.size(); ++l) {
        CHECK(pruned.weights[l] == net.weights[l]);
    }
    CHECK(mask.kept_fraction == 1.0);
}

TEST_CASE("magnitude prune: order statistics on a hand case") {
    Network net = small_net(2);
    net.spec.layer_dims = {2, 2};
    net.weights = {Matrix::from_rows({{0.1, -5.0}, {2.0, 0.01}})};
    net.rank_conventions = {RankConvention::Raw};
    const auto [pruned, mask] = magnitude_prune(net, 0.5);
    CHECK(pruned.weights[0] == Matrix::from_rows({{0.0, -5.0}, {2.0, 0.0}}));
    // Original untouched.
    CHECK(net.weights[0](0, 0) == 0.1);
    CHECK(mask.kept_fraction == 0.5);
}

TEST_CASE("magnitude prune: ties break by row-major index order") {
    Network net = small_net(3);
    net.spec.layer_dims = {2, 2};
    net.weights = {Matrix::from_rows({{1.0, -1.0}, {1.0, 2.0}})};
    net.rank_conventions = {RankConvention::Raw};
    const auto [pruned, mask] = magnitude_prune(net, 0.5);
    // |1.0| appears three times; the first two in (row, col) order go.
    CHECK(pruned.weights[0] == Matrix::from_rows({{0.0, 0.0}, {1.0, 2.0}}));
}

TEST_CASE("magnitude prune: invalid fractions rejected") {
    const Network net = small_net(4);
    CHECK_THROWS_AS(magnitude_prune(net, 1.0), DomainError);
    CHECK_THROWS_AS(magnitude_prune(net, -0.1), DomainError);
}

TEST_CASE("pruning is idempotent and monotone in the fraction") {
    const Network net = small_net(5);
    const auto [once, mask_once] = magnitude_prune(net, 0.4);
    const auto [twice, mask_twice] = magnitude_prune(once, 0.4);
    for (std::size_t l = 0; l < net.weights.size(); ++l) {
        CHECK(once.weights[l] == twice.weights[l]);
    }

    const auto [lighter, mask_light] = magnitude_prune(net, 0.2);
    const auto [heavier, mask_heavy] = magnitude_prune(net, 0.6);
    for (std::size_t l = 0; l < net.weights.size(); ++l) {
        for (std::size_t i = 0; i < net.weights[l].size(); ++i) {
            if (!mask_light.kept[l][i]) CHECK(!mask_heavy.kept[l][i]);
        }
    }
}

TEST_CASE("pruned forward pass equals the masked-weight forward pass") {
    const Network net = small_net(6);
    const auto [pruned, mask] = magnitude_prune(net, 0.3);
    Network masked = net;
    for (std::size_t l = 0; l < net.weights.size(); ++l) {
        for (std::size_t i = 0; i < net.weights[l].size(); ++i) {
            if (!mask.kept[l][i]) masked.weights[l].data()[i] = 0.0;
        }
    }
    const Vector x = oracles::random_vector(4, 61);
    CHECK(predict(pruned, x) == predict(masked, x));
}

TEST_CASE("classify_accuracy") {
    SUBCASE("a perfect net scores 1.0") {
        NetworkSpec spec;
        spec.layer_dims = {3, 3};
        spec.nonlinearity = Nonlinearity::Identity;
        spec.init = InitScheme::zero();
        const Network net = build(spec);  // identity map
        Dataset data;
        data.inputs = Matrix(6, 3);
        data.targets = Matrix(6, 3);
        SplitMix64 rng(77);
        for (std::size_t i = 0; i < 6; ++i) {
            const std::size_t cls = rng.next_u64() % 3;
            data.inputs(i, cls) = 1.0;
            data.targets(i, cls) = 1.0;
        }
        CHECK(classify_accuracy(net, data) == 1.0);
    }
    SUBCASE("a constant-output net on balanced data scores the base rate") {
        NetworkSpec spec;
        spec.layer_dims = {4, 10};
        spec.init = InitScheme::constant(0.0);
        const Network net = build(spec);  // all outputs 0 -> argmax = class 0
        Dataset data;
        const std::size_t per_class = 12;
        data.inputs = oracles::random_matrix(10 * per_class, 4, 78);
        data.targets = Matrix(10 * per_class, 10);
        for (std::size_t i = 0; i < 10 * per_class; ++i) {
            data.targets(i, i % 10) = 1.0;
        }
        CHECK(classify_accuracy(net, data) == doctest::Approx(0.1).epsilon(1e-12));
    }
    SUBCASE("agrees with a straight-line reimplementation on 100 samples") {
        const Network net = small_net(7);
        const Dataset data = one_hot_data(100, 4, 3, 79);
        double correct = 0.0;
        for (std::size_t i = 0; i < 100; ++i) {
            Vector x(data.inputs.row_data(i), data.inputs.row_data(i) + 4);
            const Vector out = oracles::forward_reference(net, x);
            std::size_t best = 0;
            for (std::size_t j = 1; j < out.size(); ++j) {
                if (out[j] > out[best]) best = j;
            }
            std::size_t truth = 0;
            for (std::size_t j = 0; j < 3; ++j) {
                if (data.targets(i, j) == 1.0) truth = j;
            }
            if (best == truth) correct += 1.0;
        }
        CHECK(classify_accuracy(net, data) == doctest::Approx(correct / 100.0));
    }
    SUBCASE("non-one-hot targets are rejected") {
        const Network net = small_net(8);
        Dataset data;
        data.inputs = oracles::random_matrix(3, 4, 80);
        data.targets = oracles::random_matrix(3, 3, 81);
        CHECK_THROWS_AS(classify_accuracy(net, data), DomainError);
    }
}
