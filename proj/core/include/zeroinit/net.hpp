#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "zeroinit/dataset.hpp"
#include "zeroinit/init.hpp"
#include "zeroinit/matrix.hpp"

namespace zeroinit {

enum class Nonlinearity { Identity, Relu };

/// Fully connected (optionally residual) network description.
/// layer_dims = [N_x, d_1, ..., d_L = N_y]; weight l has shape d_l x d_{l-1}.
/// A residual layer computes z_l = phi(W_l z_{l-1}) + skip(z_{l-1}), where the
/// skip is the identity or, for dimension-changing layers, the adaptive
/// identity (clip trailing dims / zero-pad). Biases are omitted throughout:
/// the rank statements under study are bias-free.
struct NetworkSpec {
    std::vector<std::size_t> layer_dims;
    std::vector<bool> residual;  // per weight layer; empty means all plain
    Nonlinearity nonlinearity = Nonlinearity::Relu;
    InitScheme init;
    // Subgradient propagated for Relu at exactly zero. 1.0 lets signals pass
    // identically through zero-initialized branches; 0.0 exposes the
    // dead-signal failure mode.
    double relu_zero_derivative = 1.0;

    std::size_t depth() const { return layer_dims.empty() ? 0 : layer_dims.size() - 1; }
    std::size_t input_dim() const { return layer_dims.front(); }
    std::size_t output_dim() const { return layer_dims.back(); }
    bool layer_residual(std::size_t layer) const {
        return !residual.empty() && residual[layer];
    }
    void validate() const;
};

/// Which matrix the rank trajectory measures for a layer: the raw weight, or
/// the residual component W - I of an identity-initialized square layer.
enum class RankConvention { Raw, ResidualComponent };

struct Network {
    NetworkSpec spec;
    std::vector<Matrix> weights;
    std::vector<RankConvention> rank_conventions;

    /// The matrix the rank trajectory tracks for this layer.
    Matrix measured_matrix(std::size_t layer) const;
};

/// Realizes a spec: weights per the init scheme. Under ZerO, residual layers
/// start at exact zero (the skip carries the identity); plain layers follow
/// the zeros-and-ones dispatch on their shape. Random layers derive one seed
/// per layer from the scheme seed.
Network build(const NetworkSpec& spec);

/// All intermediates of a batch forward pass (one sample per row):
/// acts[0] = inputs, preacts[l-1] and acts[l] for layers l = 1..L.
struct BatchActivations {
    std::vector<Matrix> preacts;
    std::vector<Matrix> acts;

    const Matrix& output() const { return acts.back(); }
};

BatchActivations forward_batch(const Network& net, const Matrix& inputs);

/// Single-sample forward pass returning all intermediates.
struct ForwardPass {
    std::vector<Vector> preacts;
    std::vector<Vector> acts;

    const Vector& output() const { return acts.back(); }
};

ForwardPass forward(const Network& net, const Vector& x);
Vector predict(const Network& net, const Vector& x);

enum class Reduction { Sum, Mean };

/// Squared-error loss 1/2 sum_mu |y - F(x)|^2 (the sum convention; Mean
/// divides by the sample count). Evaluated in fixed-size chunks with
/// per-sample accumulation in sample order.
double loss(const Network& net, const Dataset& data, Reduction reduction = Reduction::Sum);

/// Analytic gradients of the loss w.r.t. every weight matrix. Accumulation
/// over samples is in sample order.
std::vector<Matrix> backward(const Network& net, const Dataset& data,
                             Reduction reduction = Reduction::Sum);

/// d z_L / d z_0 at x, via chained layer Jacobians with the configured
/// Relu zero-derivative convention.
Matrix input_output_jacobian(const Network& net, const Vector& x);

/// Linear ramp: base_lr * min(1, (t+1)/warmup_steps); base_lr when
/// warmup_steps == 0.
double warmup_lr(double base_lr, std::size_t warmup_steps, std::size_t t);

struct BatchSpec {
    enum class Mode { Full, Mini };
    Mode mode = Mode::Full;
    std::size_t size = 0;            // Mini only
    std::uint64_t shuffle_seed = 0;  // Mini only; epoch order derives from it
};

struct TrainConfig {
    double lr = 0.01;
    std::size_t warmup_steps = 0;
    std::size_t steps = 100;
    BatchSpec batch;
    std::size_t log_every = 10;
    Reduction reduction = Reduction::Sum;
    bool track_rank = true;
    double rank_rel_tol = 1e-6;
    bool track_grad_norms = true;
    bool snapshot_weights = false;
};

struct TraceEntry {
    std::size_t step = 0;
    double lr = 0.0;  // rate of the update about to be applied at this step
    double loss = 0.0;
    std::vector<double> grad_norms;
    std::vector<std::size_t> num_ranks;
    std::vector<double> stable_ranks;
    std::vector<Matrix> weights;  // populated only when snapshot_weights
};

struct TrainingTrace {
    NetworkSpec spec;
    std::vector<RankConvention> rank_conventions;
    double rank_rel_tol = 1e-6;
    std::vector<TraceEntry> entries;
};

/// Loss became non-finite; carries everything logged up to the last finite
/// state.
struct DivergenceError : Error {
    DivergenceError(const std::string& msg, TrainingTrace trace)
        : Error(msg), partial_trace(std::move(trace)) {}
    TrainingTrace partial_trace;
};

/// Plain (S)GD: W_l <- W_l - eta_t * grad. Logs at every multiple of
/// log_every, including step 0 (pre-update), plus a final entry after the
/// last update. The logged ranks follow each layer's RankConvention; an
/// exactly-zero measured matrix is recorded as num_rank 0, stable_rank 0.
/// Mini-batch order is fully determined by shuffle_seed. Logging never
/// influences the weight trajectory.
TrainingTrace train(Network& net, const Dataset& data, const TrainConfig& config);

}  // namespace zeroinit
