#include "zeroinit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zeroinit/hadamard.hpp"
#include "zeroinit/init.hpp"
#include "zeroinit/svd.hpp"

namespace zeroinit {

bool RankReport::bounded_layers_satisfied() const {
    for (const LayerRankTrajectory& l : layers) {
        if (l.bounded && !l.all_satisfied) return false;
    }
    return true;
}

namespace {

// Residual layers whose branch weights start at exact zero: the draft's
// zero-initialized residual form, bounded through W itself.
bool zero_initialized_residual(const NetworkSpec& spec, std::size_t layer) {
    if (!spec.layer_residual(layer)) return false;
    switch (spec.init.kind) {
        case InitScheme::Kind::ZerO:
        case InitScheme::Kind::PartialIdentityOnly:
            return true;
        case InitScheme::Kind::Constant:
            return spec.init.constant_value == 0.0;
        default:
            return false;
    }
}

}  // namespace

RankReport rank_trajectory(const TrainingTrace& trace, std::size_t n_x, std::size_t n_y) {
    if (trace.entries.empty()) throw DomainError("rank_trajectory: empty trace");
    if (trace.entries.front().num_ranks.empty()) {
        throw DomainError("rank_trajectory: trace was logged without rank tracking");
    }
    const std::size_t layers = trace.spec.depth();
    RankReport report;
    report.rel_tol = trace.rank_rel_tol;
    report.n_x = n_x;
    report.n_y = n_y;
    report.layers.resize(layers);

    for (std::size_t l = 0; l < layers; ++l) {
        LayerRankTrajectory& traj = report.layers[l];
        traj.layer = l;
        traj.convention = trace.rank_conventions[l];
        const bool middle = l > 0 && l + 1 < layers;
        if (traj.convention == RankConvention::ResidualComponent) {
            // Theorem bound on the residual component of identity-initialized
            // middle layers.
            traj.bounded = middle;
            traj.bound = n_x;
        } else if (zero_initialized_residual(trace.spec, l)) {
            traj.bounded = true;
            traj.bound = std::min(n_x, n_y);
        }
        for (const TraceEntry& e : trace.entries) {
            const std::size_t rank = e.num_ranks[l];
            traj.steps.push_back(e.step);
            traj.num_ranks.push_back(rank);
            traj.stable_ranks.push_back(e.stable_ranks[l]);
            const bool ok = !traj.bounded || rank <= traj.bound;
            traj.satisfied.push_back(ok);
            traj.max_rank = std::max(traj.max_rank, rank);
            traj.all_satisfied = traj.all_satisfied && ok;
        }
    }
    return report;
}

namespace {

bool is_identity_chain(const Network& net) {
    if (net.spec.init.kind != InitScheme::Kind::PartialIdentityOnly) return false;
    for (std::size_t l = 0; l < net.spec.depth(); ++l) {
        if (net.spec.layer_residual(l)) return false;
    }
    return true;
}

bool is_zero_residual_form(const Network& net) {
    for (std::size_t l = 0; l < net.spec.depth(); ++l) {
        if (!net.spec.layer_residual(l)) return false;
        if (max_abs(net.weights[l]) != 0.0) return false;
    }
    return true;
}

}  // namespace

GradientBlockReport initial_gradient_blocks(const Network& net, const Dataset& data) {
    if (!is_identity_chain(net) && !is_zero_residual_form(net)) {
        throw DomainError(
            "initial_gradient_blocks: network is neither a plain partial-identity "
            "chain nor an all-residual net at exact zero");
    }
    const NetworkSpec& spec = net.spec;
    const std::size_t n_x = spec.input_dim();
    const std::size_t n_y = spec.output_dim();
    const std::size_t layers = spec.depth();

    GradientBlockReport report;
    report.gradients = backward(net, data);

    std::string violations;
    std::size_t violation_count = 0;
    for (std::size_t l = 0; l < layers; ++l) {
        const Matrix& g = report.gradients[l];
        const std::size_t block_rows = std::min(n_y, g.rows());
        const std::size_t block_cols = std::min(n_x, g.cols());
        for (std::size_t i = 0; i < g.rows(); ++i) {
            for (std::size_t j = 0; j < g.cols(); ++j) {
                if (i < block_rows && j < block_cols) continue;
                const double v = g(i, j);
                if (v != 0.0) {
                    report.max_off_block = std::max(report.max_off_block, std::fabs(v));
                    if (violation_count < 16) {
                        violations += " layer " + std::to_string(l + 1) + " (" +
                                      std::to_string(i) + "," + std::to_string(j) + ")=" +
                                      std::to_string(v) + ";";
                    }
                    ++violation_count;
                }
            }
        }
    }
    if (violation_count > 0) {
        throw Error("initial_gradient_blocks: " + std::to_string(violation_count) +
                    " off-block entries are nonzero:" + violations);
    }

    // Lambda from the last layer's leading block.
    const Matrix& last = report.gradients.back();
    const std::size_t lr = std::min(n_y, last.rows());
    const std::size_t lc = std::min(n_x, last.cols());
    report.lambda = Matrix(lr, lc);
    for (std::size_t i = 0; i < lr; ++i) {
        for (std::size_t j = 0; j < lc; ++j) report.lambda(i, j) = last(i, j);
    }

    // Reconstruction from data: Lambda = sum_mu phi'(z) ⊙ (z - y) x^T with
    // z = F(x) at this initialization.
    report.lambda_reconstructed = Matrix(lr, lc);
    const double at_zero = spec.relu_zero_derivative;
    for (std::size_t mu = 0; mu < data.count(); ++mu) {
        Vector x(data.inputs.row_data(mu), data.inputs.row_data(mu) + n_x);
        const Vector z = predict(net, x);
        for (std::size_t i = 0; i < lr; ++i) {
            double d = z[i] - data.targets(mu, i);
            if (spec.nonlinearity == Nonlinearity::Relu) {
                d *= z[i] > 0.0 ? 1.0 : (z[i] < 0.0 ? 0.0 : at_zero);
            }
            for (std::size_t j = 0; j < lc; ++j) {
                report.lambda_reconstructed(i, j) += d * x[j];
            }
        }
    }
    return report;
}

OuterSumRank outer_sum_rank_oracle(const std::vector<Vector>& a_vectors,
                                   const std::vector<Vector>& b_vectors,
                                   double rel_tol) {
    if (a_vectors.size() != b_vectors.size() || a_vectors.empty()) {
        throw DimensionError("outer_sum_rank_oracle: need equal, nonzero vector counts");
    }
    const std::size_t q = a_vectors.size();
    const std::size_t n_a = a_vectors.front().size();
    const std::size_t n_b = b_vectors.front().size();

    Matrix stacked_a(q, n_a);
    Matrix stacked_b(q, n_b);
    OuterSumRank out;
    out.sum = Matrix(n_a, n_b);
    for (std::size_t mu = 0; mu < q; ++mu) {
        if (a_vectors[mu].size() != n_a || b_vectors[mu].size() != n_b) {
            throw DimensionError("outer_sum_rank_oracle: ragged vectors");
        }
        for (std::size_t i = 0; i < n_a; ++i) stacked_a(mu, i) = a_vectors[mu][i];
        for (std::size_t j = 0; j < n_b; ++j) stacked_b(mu, j) = b_vectors[mu][j];
        for (std::size_t i = 0; i < n_a; ++i) {
            const double a = a_vectors[mu][i];
            if (a == 0.0) continue;
            double* row = out.sum.row_data(i);
            for (std::size_t j = 0; j < n_b; ++j) row[j] += a * b_vectors[mu][j];
        }
    }
    const std::size_t span_a = max_abs(stacked_a) == 0.0 ? 0 : numeric_rank(stacked_a, rel_tol);
    const std::size_t span_b = max_abs(stacked_b) == 0.0 ? 0 : numeric_rank(stacked_b, rel_tol);
    out.bound = std::min(span_a, span_b);
    out.rank = max_abs(out.sum) == 0.0 ? 0 : numeric_rank(out.sum, rel_tol);
    return out;
}

HadamardWitness hadamard_span_witness() {
    const Matrix h = hadamard_matrix(2);
    const Matrix pi = partial_identity(4, 3);
    const Matrix h_pi = matmul(h, pi);

    HadamardWitness witness;
    Matrix stacked(4, 4);
    std::size_t row = 0;
    for (std::size_t basis : {std::size_t{1}, std::size_t{2}}) {  // e2, e3 (1-indexed)
        for (double sign : {1.0, -1.0}) {
            Vector e(3, 0.0);
            e[basis] = sign;
            Vector v = matvec(h_pi, e);
            for (double& x : v) x = x > 0.0 ? x : 0.0;
            for (std::size_t j = 0; j < 4; ++j) stacked(row, j) = v[j];
            witness.vectors.push_back(std::move(v));
            ++row;
        }
    }
    witness.rank = numeric_rank(stacked, 1e-9);

    // Span certificate over the whole subspace: images of every sign pattern
    // of alpha e2 + beta e3.
    Matrix probes(8, 4);
    std::size_t probe = 0;
    for (double alpha : {1.0, -1.0, 0.0}) {
        for (double beta : {1.0, -1.0, 0.0}) {
            if (alpha == 0.0 && beta == 0.0) continue;
            if (probe == 8) break;
            Vector e(3, 0.0);
            e[1] = alpha;
            e[2] = beta;
            Vector v = matvec(h_pi, e);
            for (double& x : v) x = x > 0.0 ? x : 0.0;
            for (std::size_t j = 0; j < 4; ++j) probes(probe, j) = v[j];
            ++probe;
        }
    }
    witness.span_dimension = numeric_rank(probes, 1e-9);
    return witness;
}

namespace {

// Mean pairwise cosine over the rows of m, skipping zero rows.
std::pair<double, std::size_t> mean_row_cosine(const Matrix& m) {
    std::vector<std::size_t> keep;
    std::vector<double> norms;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double n2 = 0.0;
        const double* row = m.row_data(i);
        for (std::size_t j = 0; j < m.cols(); ++j) n2 += row[j] * row[j];
        if (n2 > 0.0) {
            keep.push_back(i);
            norms.push_back(std::sqrt(n2));
        }
    }
    const std::size_t excluded = m.rows() - keep.size();
    if (keep.size() < 2) return {0.0, excluded};
    double acc = 0.0;
    for (std::size_t a = 0; a < keep.size(); ++a) {
        const double* ra = m.row_data(keep[a]);
        for (std::size_t b = a + 1; b < keep.size(); ++b) {
            const double* rb = m.row_data(keep[b]);
            double dot = 0.0;
            for (std::size_t j = 0; j < m.cols(); ++j) dot += ra[j] * rb[j];
            acc += dot / (norms[a] * norms[b]);
        }
    }
    const double pairs = 0.5 * static_cast<double>(keep.size()) *
                         static_cast<double>(keep.size() - 1);
    return {acc / pairs, excluded};
}

}  // namespace

SymmetryCorrelations symmetry_correlations(const Matrix& w) {
    if (w.empty() || max_abs(w) == 0.0) {
        throw DomainError("symmetry_correlations: all-zero matrix");
    }
    SymmetryCorrelations out;
    auto [cf, rows_excluded] = mean_row_cosine(w);
    const Matrix wt = w.transposed();
    auto [cb, cols_excluded] = mean_row_cosine(wt);
    out.c_f = cf;
    out.c_b = cb;
    out.rows_excluded = rows_excluded;
    out.cols_excluded = cols_excluded;
    return out;
}

namespace {

double max_pairwise_row_deviation(const Matrix& m) {
    double dev = 0.0;
    for (std::size_t i = 1; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            dev = std::max(dev, std::fabs(m(i, j) - m(0, j)));
        }
    }
    return dev;
}

double max_entry_deviation(const Matrix& m) {
    const double ref = m(0, 0);
    double dev = 0.0;
    for (double v : m.data()) dev = std::max(dev, std::fabs(v - ref));
    return dev;
}

}  // namespace

Level1Report level1_symmetry_check(const TrainingTrace& trace, double tolerance) {
    const NetworkSpec& spec = trace.spec;
    for (std::size_t l = 0; l < spec.depth(); ++l) {
        if (spec.layer_residual(l)) {
            throw DomainError("level1_symmetry_check: requires a plain (non-residual) MLP");
        }
    }
    if (spec.init.kind != InitScheme::Kind::Constant) {
        throw DomainError("level1_symmetry_check: requires constant initialization");
    }
    for (std::size_t i = 2; i + 1 < spec.layer_dims.size(); ++i) {
        if (spec.layer_dims[i] != spec.layer_dims[1]) {
            throw DomainError("level1_symmetry_check: requires a uniform hidden dimension");
        }
    }
    if (trace.entries.empty() || trace.entries.front().weights.empty()) {
        throw DomainError("level1_symmetry_check: trace must carry weight snapshots");
    }

    Level1Report report;
    report.tolerance = tolerance;
    const std::size_t layers = spec.depth();
    for (const TraceEntry& entry : trace.entries) {
        Level1StepCheck check;
        check.step = entry.step;
        check.first_layer_row_deviation = max_pairwise_row_deviation(entry.weights.front());
        for (std::size_t l = 1; l + 1 < layers; ++l) {
            check.middle_entry_deviation =
                std::max(check.middle_entry_deviation, max_entry_deviation(entry.weights[l]));
        }
        check.last_layer_col_deviation =
            max_pairwise_row_deviation(entry.weights.back().transposed());
        check.ok = check.first_layer_row_deviation <= tolerance &&
                   check.middle_entry_deviation <= tolerance &&
                   check.last_layer_col_deviation <= tolerance;
        report.all_ok = report.all_ok && check.ok;
        report.steps.push_back(check);
    }
    return report;
}

IsometryReport isometry_report(const Network& net, const std::vector<Vector>& inputs) {
    if (inputs.empty()) throw DomainError("isometry_report: need at least one input");
    IsometryReport report;
    report.samples = inputs.size();
    double sum = 0.0;
    std::size_t count = 0;
    bool first = true;
    for (const Vector& x : inputs) {
        const Matrix jac = input_output_jacobian(net, x);
        const Vector sigma = singular_values(jac);
        for (double s : sigma) {
            if (first) {
                report.min_sigma = report.max_sigma = s;
                first = false;
            } else {
                report.min_sigma = std::min(report.min_sigma, s);
                report.max_sigma = std::max(report.max_sigma, s);
            }
            sum += s;
            ++count;
        }
    }
    report.mean_sigma = sum / static_cast<double>(count);
    return report;
}

}  // namespace zeroinit
