#pragma once

#include <cstddef>

#include "zeroinit/matrix.hpp"

namespace zeroinit {

/// Thin SVD A = U diag(S) V^T with k = min(rows, cols) columns.
/// singular_values are sorted descending and non-negative; U, V have
/// orthonormal columns (deterministic fillers for exactly-zero directions).
struct SvdResult {
    Vector singular_values;
    Matrix left_vectors;   // rows x k
    Matrix right_vectors;  // cols x k
};

struct SvdOptions {
    bool want_vectors = true;
    std::size_t max_sweeps = 64;
    // A column pair counts as orthogonal once |<wp,wq>| <= pair_tol*|wp||wq|.
    double pair_tol = 1e-15;
};

/// One-sided Jacobi (Hestenes) SVD. Cyclic pair order, fixed reduction order,
/// fully deterministic. Throws ConvergenceError with the worst remaining
/// normalized off-diagonal if max_sweeps is exhausted.
SvdResult svd(const Matrix& a, const SvdOptions& opts = {});

/// Singular values only (descending); skips the U/V bookkeeping.
Vector singular_values(const Matrix& a, const SvdOptions& opts = {});

/// Number of singular values exceeding rel_tol * sigma_max. Zero matrix -> 0.
/// rel_tol must lie in (0, 1); the default separates directions that training
/// never moved off machine-epsilon scale from trained ones.
std::size_t numeric_rank(const Matrix& a, double rel_tol = 1e-6);

/// ||A||_F^2 / sigma_max^2. Throws DomainError for the zero matrix.
double stable_rank(const Matrix& a);

/// Both ranks from an already-computed descending spectrum.
std::size_t numeric_rank_from_values(const Vector& sigma, double rel_tol);
double stable_rank_from_values(const Vector& sigma);

}  // namespace zeroinit
