#include "zeroinit/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace zeroinit {

namespace {

// Column-major working copy so that Jacobi rotations run over contiguous
// memory.
struct ColMajor {
    std::size_t m = 0, n = 0;
    std::vector<double> data;  // data[j*m + i]

    double* col(std::size_t j) { return data.data() + j * m; }
    const double* col(std::size_t j) const { return data.data() + j * m; }
};

ColMajor to_col_major(const Matrix& a) {
    ColMajor w;
    w.m = a.rows();
    w.n = a.cols();
    w.data.assign(w.m * w.n, 0.0);
    for (std::size_t i = 0; i < w.m; ++i) {
        const double* row = a.row_data(i);
        for (std::size_t j = 0; j < w.n; ++j) w.data[j * w.m + i] = row[j];
    }
    return w;
}

double dot(const double* x, const double* y, std::size_t len) {
    double acc = 0.0;
    for (std::size_t i = 0; i < len; ++i) acc += x[i] * y[i];
    return acc;
}

void rotate(double* p, double* q, std::size_t len, double c, double s) {
    for (std::size_t i = 0; i < len; ++i) {
        const double vp = p[i];
        const double vq = q[i];
        p[i] = c * vp - s * vq;
        q[i] = s * vp + c * vq;
    }
}

struct JacobiOutcome {
    std::vector<double> col_norm2;
};

// Orthogonalizes the columns of w in place; v (if non-null, n x n col-major
// identity on entry) accumulates the right rotations.
JacobiOutcome one_sided_jacobi(ColMajor& w, ColMajor* v, const SvdOptions& opts) {
    const std::size_t m = w.m, n = w.n;
    std::vector<double> norm2(n, 0.0);
    // The computed inner product of two length-m columns carries roundoff of
    // order eps*sqrt(m) relative to |wp||wq|; below that floor a pair cannot
    // be orthogonalized any further and must count as converged.
    const double eps_floor =
        32.0 * std::numeric_limits<double>::epsilon() * std::sqrt(static_cast<double>(m));
    const double tol = std::max(opts.pair_tol, eps_floor);
    const double tol2 = tol * tol;

    double worst = 0.0;
    for (std::size_t sweep = 0; sweep < opts.max_sweeps; ++sweep) {
        double max_norm2 = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            norm2[j] = dot(w.col(j), w.col(j), m);
            max_norm2 = std::max(max_norm2, norm2[j]);
        }
        // Columns this far below sigma_max are numerical noise; rotating two
        // of them against each other never settles and cannot affect the
        // factorization at working precision.
        const double deflate2 = 1e-20 * max_norm2;
        bool changed = false;
        worst = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double alpha = norm2[p];
                const double beta = norm2[q];
                if (alpha == 0.0 || beta == 0.0) continue;
                if (alpha <= deflate2 && beta <= deflate2) continue;
                const double gamma = dot(w.col(p), w.col(q), m);
                const double bound = tol2 * alpha * beta;
                if (gamma * gamma <= bound) continue;
                worst = std::max(worst, std::fabs(gamma) / std::sqrt(alpha * beta));

                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t =
                    (zeta >= 0.0 ? 1.0 : -1.0) / (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;

                rotate(w.col(p), w.col(q), m, c, s);
                if (v) rotate(v->col(p), v->col(q), n, c, s);
                norm2[p] = alpha - t * gamma;
                norm2[q] = beta + t * gamma;
                changed = true;
            }
        }
        if (!changed) {
            for (std::size_t j = 0; j < n; ++j) norm2[j] = dot(w.col(j), w.col(j), m);
            return {std::move(norm2)};
        }
    }
    throw ConvergenceError("svd: one-sided Jacobi did not converge in " +
                               std::to_string(opts.max_sweeps) + " sweeps",
                           worst);
}

// Deterministic orthonormal filler for exactly-zero singular directions:
// first standard basis vector not captured by the existing columns,
// Gram-Schmidt re-orthogonalized.
void fill_null_column(Matrix& u, std::size_t col) {
    const std::size_t m = u.rows();
    Vector best;
    double best_norm = -1.0;
    for (std::size_t cand = 0; cand < m; ++cand) {
        Vector e(m, 0.0);
        e[cand] = 1.0;
        for (std::size_t j = 0; j < col; ++j) {
            double proj = 0.0;
            for (std::size_t i = 0; i < m; ++i) proj += u(i, j) * e[i];
            for (std::size_t i = 0; i < m; ++i) e[i] -= proj * u(i, j);
        }
        const double norm = std::sqrt(dot(e.data(), e.data(), m));
        if (norm > best_norm) {
            best_norm = norm;
            best = std::move(e);
        }
        // A candidate this good cannot be improved enough to matter.
        if (best_norm > 0.7) break;
    }
    // best_norm >= 1/sqrt(m) whenever col < m, so this is always usable.
    for (std::size_t j = 0; j < col; ++j) {  // second Gram-Schmidt pass
        double proj = 0.0;
        for (std::size_t i = 0; i < m; ++i) proj += u(i, j) * best[i];
        for (std::size_t i = 0; i < m; ++i) best[i] -= proj * u(i, j);
    }
    const double norm = std::sqrt(dot(best.data(), best.data(), m));
    for (std::size_t i = 0; i < m; ++i) u(i, col) = best[i] / norm;
}

SvdResult svd_tall(const Matrix& a, const SvdOptions& opts) {
    const std::size_t m = a.rows(), n = a.cols();
    ColMajor w = to_col_major(a);
    ColMajor v;
    if (opts.want_vectors) {
        v.m = v.n = n;
        v.data.assign(n * n, 0.0);
        for (std::size_t j = 0; j < n; ++j) v.data[j * n + j] = 1.0;
    }
    JacobiOutcome out = one_sided_jacobi(w, opts.want_vectors ? &v : nullptr, opts);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return out.col_norm2[x] > out.col_norm2[y];
    });

    SvdResult res;
    res.singular_values.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        res.singular_values[j] = std::sqrt(out.col_norm2[order[j]]);
    }
    if (!opts.want_vectors) return res;

    res.left_vectors = Matrix(m, n);
    res.right_vectors = Matrix(n, n);
    const double sigma_max = res.singular_values.front();
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        const double sigma = res.singular_values[j];
        const double* wc = w.col(src);
        const double* vc = v.col(src);
        for (std::size_t i = 0; i < n; ++i) res.right_vectors(i, j) = vc[i];
        if (sigma > 1e-9 * sigma_max) {
            for (std::size_t i = 0; i < m; ++i) res.left_vectors(i, j) = wc[i] / sigma;
            continue;
        }
        // Deflated noise direction: its residual column may not be orthogonal
        // to the others, so re-orthonormalize it explicitly. The induced
        // reconstruction error is bounded by sigma itself.
        bool filled = false;
        if (sigma > 0.0) {
            Vector u(m);
            for (std::size_t i = 0; i < m; ++i) u[i] = wc[i] / sigma;
            for (std::size_t prev = 0; prev < j; ++prev) {
                double proj = 0.0;
                for (std::size_t i = 0; i < m; ++i) proj += res.left_vectors(i, prev) * u[i];
                for (std::size_t i = 0; i < m; ++i) u[i] -= proj * res.left_vectors(i, prev);
            }
            const double norm = std::sqrt(dot(u.data(), u.data(), m));
            if (norm > 0.5) {
                for (std::size_t i = 0; i < m; ++i) res.left_vectors(i, j) = u[i] / norm;
                filled = true;
            }
        }
        if (!filled) fill_null_column(res.left_vectors, j);
    }
    return res;
}

}  // namespace

SvdResult svd(const Matrix& a, const SvdOptions& opts) {
    if (a.empty()) throw DimensionError("svd: empty matrix");
    if (a.rows() >= a.cols()) return svd_tall(a, opts);
    // Wide matrix: factor the transpose and swap the vector roles.
    SvdResult t = svd_tall(a.transposed(), opts);
    SvdResult res;
    res.singular_values = std::move(t.singular_values);
    res.left_vectors = std::move(t.right_vectors);
    res.right_vectors = std::move(t.left_vectors);
    return res;
}

Vector singular_values(const Matrix& a, const SvdOptions& opts) {
    if (a.empty()) throw DimensionError("svd: empty matrix");
    SvdOptions vo = opts;
    vo.want_vectors = false;
    const Matrix* work = &a;
    Matrix t;
    if (a.rows() < a.cols()) {
        t = a.transposed();
        work = &t;
    }
    return svd_tall(*work, vo).singular_values;
}

std::size_t numeric_rank(const Matrix& a, double rel_tol) {
    return numeric_rank_from_values(singular_values(a), rel_tol);
}

std::size_t numeric_rank_from_values(const Vector& sigma, double rel_tol) {
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
        throw DomainError("numeric_rank: rel_tol must lie in (0, 1)");
    }
    if (sigma.empty()) return 0;
    const double threshold = rel_tol * sigma.front();
    std::size_t rank = 0;
    for (double s : sigma) {
        if (s > threshold) ++rank;
    }
    return rank;
}

double stable_rank(const Matrix& a) {
    return stable_rank_from_values(singular_values(a));
}

double stable_rank_from_values(const Vector& sigma) {
    if (sigma.empty() || sigma.front() == 0.0) {
        throw DomainError("stable_rank: undefined for the zero matrix");
    }
    double sum2 = 0.0;
    for (double s : sigma) sum2 += s * s;
    return sum2 / (sigma.front() * sigma.front());
}

}  // namespace zeroinit
