#include "zeroinit/net.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "zeroinit/rng.hpp"
#include "zeroinit/svd.hpp"

namespace zeroinit {

namespace {

constexpr std::size_t kEvalChunk = 512;

double relu_derivative(double preact, double at_zero) {
    if (preact > 0.0) return 1.0;
    if (preact < 0.0) return 0.0;
    return at_zero;
}

void apply_nonlinearity(const NetworkSpec& spec, Matrix& m) {
    if (spec.nonlinearity == Nonlinearity::Identity) return;
    for (double& v : m.data()) v = v > 0.0 ? v : 0.0;
}

// d phi/dx evaluated at the preactivations, as a mask matrix.
void apply_derivative_mask(const NetworkSpec& spec, const Matrix& preacts, Matrix& grad) {
    if (spec.nonlinearity == Nonlinearity::Identity) return;
    const double at_zero = spec.relu_zero_derivative;
    for (std::size_t i = 0; i < grad.size(); ++i) {
        grad.data()[i] *= relu_derivative(preacts.data()[i], at_zero);
    }
}

// acts += skip(prev): adaptive identity over the shared leading coordinates.
void add_skip(const Matrix& prev, Matrix& acts) {
    const std::size_t d = std::min(prev.cols(), acts.cols());
    for (std::size_t i = 0; i < acts.rows(); ++i) {
        double* dst = acts.row_data(i);
        const double* src = prev.row_data(i);
        for (std::size_t j = 0; j < d; ++j) dst[j] += src[j];
    }
}

Matrix gather_rows(const Matrix& src, const std::vector<std::size_t>& rows,
                   std::size_t begin, std::size_t end) {
    Matrix out(end - begin, src.cols());
    for (std::size_t r = begin; r < end; ++r) {
        const double* s = src.row_data(rows[r]);
        double* d = out.row_data(r - begin);
        std::copy(s, s + src.cols(), d);
    }
    return out;
}

void check_dataset(const NetworkSpec& spec, const Dataset& data, const char* op) {
    if (data.count() == 0) throw DimensionError(std::string(op) + ": empty dataset");
    if (data.input_dim() != spec.input_dim() || data.target_dim() != spec.output_dim()) {
        throw DimensionError(std::string(op) + ": dataset dims " +
                             std::to_string(data.input_dim()) + "->" +
                             std::to_string(data.target_dim()) + " do not match network " +
                             std::to_string(spec.input_dim()) + "->" +
                             std::to_string(spec.output_dim()));
    }
}

}  // namespace

void NetworkSpec::validate() const {
    if (layer_dims.size() < 2) {
        throw DimensionError("NetworkSpec: need at least one weight layer");
    }
    for (std::size_t d : layer_dims) {
        if (d == 0) throw DimensionError("NetworkSpec: all dims must be >= 1");
    }
    if (!residual.empty() && residual.size() != depth()) {
        throw DimensionError("NetworkSpec: residual flags must match layer count");
    }
    if (!std::isfinite(relu_zero_derivative)) {
        throw DomainError("NetworkSpec: relu_zero_derivative must be finite");
    }
}

Matrix Network::measured_matrix(std::size_t layer) const {
    const Matrix& w = weights[layer];
    if (rank_conventions[layer] == RankConvention::Raw) return w;
    Matrix m = w;
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) -= 1.0;
    return m;
}

Network build(const NetworkSpec& spec) {
    spec.validate();
    Network net;
    net.spec = spec;
    const std::size_t layers = spec.depth();
    net.weights.reserve(layers);
    net.rank_conventions.assign(layers, RankConvention::Raw);

    const bool deterministic_identity = spec.init.kind == InitScheme::Kind::ZerO ||
                                        spec.init.kind == InitScheme::Kind::PartialIdentityOnly;

    for (std::size_t l = 0; l < layers; ++l) {
        const std::size_t rows = spec.layer_dims[l + 1];
        const std::size_t cols = spec.layer_dims[l];
        Matrix w;
        switch (spec.init.kind) {
            case InitScheme::Kind::ZerO:
                // Residual branches start at exact zero; the skip carries the
                // identity. Plain layers follow the shape dispatch.
                w = spec.layer_residual(l)
                        ? Matrix(rows, cols)
                        : zero_init_matrix(rows, cols, spec.init.strict_orthonormal);
                break;
            case InitScheme::Kind::PartialIdentityOnly:
                w = spec.layer_residual(l) ? Matrix(rows, cols) : partial_identity(rows, cols);
                break;
            case InitScheme::Kind::Constant:
                w = Matrix(rows, cols, spec.init.constant_value);
                break;
            case InitScheme::Kind::RandomFanIn:
            case InitScheme::Kind::RandomFanAvg: {
                InitScheme layer_scheme = spec.init;
                layer_scheme.seed = SplitMix64::derive(spec.init.seed, l);
                w = random_init(layer_scheme, rows, cols);
                break;
            }
        }
        // Square identity-initialized plain layers are tracked through their
        // residual component W - I; everything else through W itself.
        if (rows == cols && !spec.layer_residual(l) && deterministic_identity) {
            net.rank_conventions[l] = RankConvention::ResidualComponent;
        }
        net.weights.push_back(std::move(w));
    }
    return net;
}

BatchActivations forward_batch(const Network& net, const Matrix& inputs) {
    const NetworkSpec& spec = net.spec;
    if (inputs.cols() != spec.input_dim()) {
        throw DimensionError("forward: input dim " + std::to_string(inputs.cols()) +
                             " does not match network input " +
                             std::to_string(spec.input_dim()));
    }
    BatchActivations out;
    out.acts.reserve(spec.depth() + 1);
    out.preacts.reserve(spec.depth());
    out.acts.push_back(inputs);
    for (std::size_t l = 0; l < spec.depth(); ++l) {
        Matrix pre = matmul(out.acts.back(), net.weights[l].transposed());
        Matrix act = pre;
        apply_nonlinearity(spec, act);
        if (spec.layer_residual(l)) add_skip(out.acts.back(), act);
        out.preacts.push_back(std::move(pre));
        out.acts.push_back(std::move(act));
    }
    return out;
}

ForwardPass forward(const Network& net, const Vector& x) {
    Matrix row(1, x.size());
    std::copy(x.begin(), x.end(), row.row_data(0));
    BatchActivations batch = forward_batch(net, row);
    ForwardPass pass;
    for (const Matrix& m : batch.preacts) {
        pass.preacts.emplace_back(m.row_data(0), m.row_data(0) + m.cols());
    }
    for (const Matrix& m : batch.acts) {
        pass.acts.emplace_back(m.row_data(0), m.row_data(0) + m.cols());
    }
    return pass;
}

Vector predict(const Network& net, const Vector& x) {
    return forward(net, x).acts.back();
}

double loss(const Network& net, const Dataset& data, Reduction reduction) {
    check_dataset(net.spec, data, "loss");
    const std::size_t p = data.count();
    double acc = 0.0;
    std::vector<std::size_t> all(p);
    std::iota(all.begin(), all.end(), 0);
    for (std::size_t begin = 0; begin < p; begin += kEvalChunk) {
        const std::size_t end = std::min(begin + kEvalChunk, p);
        const Matrix x = gather_rows(data.inputs, all, begin, end);
        const Matrix y = gather_rows(data.targets, all, begin, end);
        const Matrix out = forward_batch(net, x).output();
        for (std::size_t i = 0; i < out.rows(); ++i) {
            const double* o = out.row_data(i);
            const double* t = y.row_data(i);
            double sample = 0.0;
            for (std::size_t j = 0; j < out.cols(); ++j) {
                const double d = t[j] - o[j];
                sample += d * d;
            }
            acc += 0.5 * sample;
        }
    }
    return reduction == Reduction::Mean ? acc / static_cast<double>(p) : acc;
}

namespace {

std::vector<Matrix> backward_batch(const Network& net, const Matrix& inputs,
                                   const Matrix& targets, Reduction reduction) {
    const NetworkSpec& spec = net.spec;
    const std::size_t layers = spec.depth();
    BatchActivations fwd = forward_batch(net, inputs);

    // dL/dz_L = z_L - y (sum convention; Mean scales by 1/P here so every
    // downstream product inherits it).
    Matrix grad_act = subtract(fwd.output(), targets);
    if (reduction == Reduction::Mean) {
        const double inv = 1.0 / static_cast<double>(inputs.rows());
        for (double& v : grad_act.data()) v *= inv;
    }

    std::vector<Matrix> grads(layers);
    for (std::size_t l = layers; l-- > 0;) {
        Matrix grad_pre = grad_act;  // dL/dx_l = dL/dz_l ⊙ phi'(x_l)
        apply_derivative_mask(spec, fwd.preacts[l], grad_pre);
        grads[l] = matmul(grad_pre.transposed(), fwd.acts[l]);
        if (l > 0) {
            Matrix next = matmul(grad_pre, net.weights[l]);
            if (spec.layer_residual(l)) add_skip(grad_act, next);
            grad_act = std::move(next);
        }
    }
    return grads;
}

}  // namespace

std::vector<Matrix> backward(const Network& net, const Dataset& data, Reduction reduction) {
    check_dataset(net.spec, data, "backward");
    return backward_batch(net, data.inputs, data.targets, reduction);
}

Matrix input_output_jacobian(const Network& net, const Vector& x) {
    const NetworkSpec& spec = net.spec;
    ForwardPass pass = forward(net, x);
    Matrix jac = Matrix::identity(spec.input_dim());
    for (std::size_t l = 0; l < spec.depth(); ++l) {
        Matrix next = matmul(net.weights[l], jac);
        if (spec.nonlinearity == Nonlinearity::Relu) {
            for (std::size_t i = 0; i < next.rows(); ++i) {
                const double d =
                    relu_derivative(pass.preacts[l][i], spec.relu_zero_derivative);
                double* row = next.row_data(i);
                for (std::size_t j = 0; j < next.cols(); ++j) row[j] *= d;
            }
        }
        if (spec.layer_residual(l)) {
            const std::size_t d = std::min(next.rows(), jac.rows());
            for (std::size_t i = 0; i < d; ++i) {
                double* dst = next.row_data(i);
                const double* src = jac.row_data(i);
                for (std::size_t j = 0; j < next.cols(); ++j) dst[j] += src[j];
            }
        }
        jac = std::move(next);
    }
    return jac;
}

double warmup_lr(double base_lr, std::size_t warmup_steps, std::size_t t) {
    if (!(base_lr > 0.0)) throw DomainError("warmup_lr: base_lr must be positive");
    if (warmup_steps == 0) return base_lr;
    const double ramp = static_cast<double>(t + 1) / static_cast<double>(warmup_steps);
    return base_lr * std::min(1.0, ramp);
}

namespace {

class BatchSchedule {
public:
    BatchSchedule(const BatchSpec& spec, std::size_t p) : spec_(spec), p_(p) {
        if (spec.mode == BatchSpec::Mode::Mini) {
            if (spec.size == 0) throw DomainError("train: mini-batch size must be >= 1");
            batches_per_epoch_ = (p + spec.size - 1) / spec.size;
        } else {
            batches_per_epoch_ = 1;
        }
        indices_.resize(p);
        epoch_ = SIZE_MAX;
    }

    // Row indices of batch t, in the order samples are accumulated.
    std::pair<std::size_t, std::size_t> batch_range(std::size_t t) {
        if (spec_.mode == BatchSpec::Mode::Full) return {0, p_};
        const std::size_t epoch = t / batches_per_epoch_;
        const std::size_t slot = t % batches_per_epoch_;
        ensure_epoch(epoch);
        const std::size_t begin = slot * spec_.size;
        return {begin, std::min(begin + spec_.size, p_)};
    }

    const std::vector<std::size_t>& indices() const { return indices_; }
    std::size_t batches_per_epoch() const { return batches_per_epoch_; }

private:
    void ensure_epoch(std::size_t epoch) {
        if (epoch == epoch_) return;
        std::iota(indices_.begin(), indices_.end(), 0);
        // Seeded Fisher-Yates; the epoch stream derives from the shuffle seed
        // so logging cadence cannot perturb the order.
        SplitMix64 rng(SplitMix64::derive(spec_.shuffle_seed, epoch));
        for (std::size_t i = p_; i > 1; --i) {
            const std::size_t j = rng.next_u64() % i;
            std::swap(indices_[i - 1], indices_[j]);
        }
        epoch_ = epoch;
    }

    BatchSpec spec_;
    std::size_t p_;
    std::size_t batches_per_epoch_ = 1;
    std::vector<std::size_t> indices_;
    std::size_t epoch_ = 0;
};

}  // namespace

TrainingTrace train(Network& net, const Dataset& data, const TrainConfig& config) {
    check_dataset(net.spec, data, "train");
    if (config.log_every == 0) throw DomainError("train: log_every must be >= 1");

    TrainingTrace trace;
    trace.spec = net.spec;
    trace.rank_conventions = net.rank_conventions;
    trace.rank_rel_tol = config.rank_rel_tol;

    BatchSchedule schedule(config.batch, data.count());
    const std::size_t layers = net.spec.depth();

    auto batch_gradients = [&](std::size_t t) {
        auto [begin, end] = schedule.batch_range(t);
        if (config.batch.mode == BatchSpec::Mode::Full) {
            return backward_batch(net, data.inputs, data.targets, config.reduction);
        }
        const Matrix x = gather_rows(data.inputs, schedule.indices(), begin, end);
        const Matrix y = gather_rows(data.targets, schedule.indices(), begin, end);
        return backward_batch(net, x, y, config.reduction);
    };

    auto log_entry = [&](std::size_t t, const std::vector<Matrix>* grads) {
        TraceEntry entry;
        entry.step = t;
        entry.lr = warmup_lr(config.lr, config.warmup_steps, t);
        entry.loss = loss(net, data, config.reduction);
        if (!std::isfinite(entry.loss)) {
            throw DivergenceError("train: loss diverged at step " + std::to_string(t),
                                  std::move(trace));
        }
        if (config.track_grad_norms && grads) {
            for (const Matrix& g : *grads) entry.grad_norms.push_back(frobenius_norm(g));
        }
        if (config.track_rank) {
            for (std::size_t l = 0; l < layers; ++l) {
                const Matrix m = net.measured_matrix(l);
                if (max_abs(m) == 0.0) {
                    entry.num_ranks.push_back(0);
                    entry.stable_ranks.push_back(0.0);
                } else {
                    const Vector sigma = singular_values(m);
                    entry.num_ranks.push_back(
                        numeric_rank_from_values(sigma, config.rank_rel_tol));
                    entry.stable_ranks.push_back(stable_rank_from_values(sigma));
                }
            }
        }
        if (config.snapshot_weights) entry.weights = net.weights;
        trace.entries.push_back(std::move(entry));
    };

    for (std::size_t t = 0; t <= config.steps; ++t) {
        const bool last = t == config.steps;
        const bool log_now = last || (t % config.log_every == 0);
        std::vector<Matrix> grads;
        if (!last || (log_now && config.track_grad_norms)) grads = batch_gradients(t);
        for (const Matrix& g : grads) {
            if (!g.all_finite()) {
                throw DivergenceError("train: gradient diverged at step " + std::to_string(t),
                                      std::move(trace));
            }
        }
        if (log_now) log_entry(t, grads.empty() ? nullptr : &grads);
        if (last) break;
        const double eta = warmup_lr(config.lr, config.warmup_steps, t);
        for (std::size_t l = 0; l < layers; ++l) {
            axpy_in_place(net.weights[l], -eta, grads[l]);
        }
    }
    return trace;
}

}  // namespace zeroinit
