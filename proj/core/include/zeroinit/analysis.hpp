#pragma once

#include <cstddef>
#include <vector>

#include "zeroinit/matrix.hpp"
#include "zeroinit/net.hpp"

namespace zeroinit {

/// Rank trajectory of one layer across the logged steps of a training run.
/// `bounded` marks layers the rank theory actually constrains: middle layers
/// tracked through W - I (bound N_x), and zero-initialized residual-form
/// layers tracked through W itself (bound min(N_x, N_y)).
struct LayerRankTrajectory {
    std::size_t layer = 0;  // 0-based weight index
    RankConvention convention = RankConvention::Raw;
    bool bounded = false;
    std::size_t bound = 0;
    std::vector<std::size_t> steps;
    std::vector<std::size_t> num_ranks;
    std::vector<double> stable_ranks;
    std::vector<bool> satisfied;  // per logged step; vacuously true if !bounded
    std::size_t max_rank = 0;
    bool all_satisfied = true;
};

struct RankReport {
    double rel_tol = 1e-6;
    std::size_t n_x = 0, n_y = 0;
    std::vector<LayerRankTrajectory> layers;

    bool bounded_layers_satisfied() const;
};

/// Evaluates the rank bounds on a recorded trace (which must have been logged
/// with rank tracking enabled).
RankReport rank_trajectory(const TrainingTrace& trace, std::size_t n_x, std::size_t n_y);

/// Initial-gradient block structure at a deterministic identity-chain
/// initialization. For each layer the gradient must vanish outside the
/// leading min(N_y, d_l) x min(N_x, d_{l-1}) block; the block itself is the
/// data-dependent matrix Lambda.
struct GradientBlockReport {
    Matrix lambda;                // leading block of the last layer's gradient
    Matrix lambda_reconstructed;  // sum_mu phi'(z) ⊙ (z - y) x^T, z = F_init(x)
    double max_off_block = 0.0;   // 0 exactly when the pattern holds
    std::vector<Matrix> gradients;
};

/// Requires a freshly built net that is either a plain partial-identity chain
/// or an all-residual net with exactly-zero weights; throws DomainError
/// otherwise, and Error with the offending coordinates if the zero pattern is
/// violated.
GradientBlockReport initial_gradient_blocks(const Network& net, const Dataset& data);

/// Rank of M = sum_mu a^mu (x) b^mu together with the span bound min(U, V)
/// obtained from SVDs of the stacked vectors.
struct OuterSumRank {
    std::size_t rank = 0;
    std::size_t bound = 0;
    Matrix sum;
};

OuterSumRank outer_sum_rank_oracle(const std::vector<Vector>& a_vectors,
                                   const std::vector<Vector>& b_vectors,
                                   double rel_tol = 1e-9);

/// The fixed N_h = 4, N_x = 3 dimension-expansion certificate. `vectors` are
/// relu(+-H I* e2), relu(+-H I* e3) and `rank` is the rank of their stack.
/// Note relu(v) + relu(-v) = |v|, and |column of H| is the all-ones vector,
/// so those four vectors are linearly dependent (rank 3) for every Hadamard
/// column convention. The dimension-expansion conclusion still holds: probing
/// relu(H I* x) across the sign patterns of span(e2, e3) reaches dimension
/// 4 > N_x = 3, reported as span_dimension.
struct HadamardWitness {
    std::vector<Vector> vectors;
    std::size_t rank = 0;
    std::size_t span_dimension = 0;
};

HadamardWitness hadamard_span_witness();

/// Mean pairwise cosine similarity over rows (C_f) and columns (C_b).
/// Zero rows/columns cannot be normalized; they are excluded and counted.
struct SymmetryCorrelations {
    double c_f = 0.0;
    double c_b = 0.0;
    std::size_t rows_excluded = 0;
    std::size_t cols_excluded = 0;
};

SymmetryCorrelations symmetry_correlations(const Matrix& w);

/// Row/entry/column equality pattern of a constant-initialized plain MLP,
/// checked at every logged step of a snapshot-carrying trace.
struct Level1StepCheck {
    std::size_t step = 0;
    double first_layer_row_deviation = 0.0;
    double middle_entry_deviation = 0.0;
    double last_layer_col_deviation = 0.0;
    bool ok = true;
};

struct Level1Report {
    double tolerance = 1e-9;
    std::vector<Level1StepCheck> steps;
    bool all_ok = true;
};

Level1Report level1_symmetry_check(const TrainingTrace& trace, double tolerance = 1e-9);

/// Singular-value statistics of the input-output Jacobian across inputs.
struct IsometryReport {
    double min_sigma = 0.0;
    double max_sigma = 0.0;
    double mean_sigma = 0.0;
    std::size_t samples = 0;
};

IsometryReport isometry_report(const Network& net, const std::vector<Vector>& inputs);

}  // namespace zeroinit
