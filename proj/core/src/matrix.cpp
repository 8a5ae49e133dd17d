#include "zeroinit/matrix.hpp"

#include <cmath>
#include <string>

namespace zeroinit {

namespace {

std::string shape_str(std::size_t r, std::size_t c) {
    return std::to_string(r) + "x" + std::to_string(c);
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    Matrix m(rows.size(), rows.size() ? rows.begin()->size() : 0);
    std::size_t i = 0;
    for (const auto& r : rows) {
        if (r.size() != m.cols_) {
            throw DimensionError("from_rows: ragged row " + std::to_string(i));
        }
        std::size_t j = 0;
        for (double v : r) {
            if (!std::isfinite(v)) {
                throw DomainError("from_rows: non-finite entry at (" + std::to_string(i) +
                                  "," + std::to_string(j) + ")");
            }
            m(i, j++) = v;
        }
        ++i;
    }
    return m;
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::column(const Vector& v) {
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        const double* src = row_data(i);
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = src[j];
    }
    return t;
}

bool Matrix::all_finite() const {
    for (double v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

namespace {

void axpy_row4(double* __restrict c0, double* __restrict c1, double* __restrict c2,
               double* __restrict c3, const double* __restrict bk, double v0, double v1,
               double v2, double v3, std::size_t len) {
    for (std::size_t j = 0; j < len; ++j) {
        const double bj = bk[j];
        c0[j] += v0 * bj;
        c1[j] += v1 * bj;
        c2[j] += v2 * bj;
        c3[j] += v3 * bj;
    }
}

void axpy_row1(double* __restrict ci, const double* __restrict bk, double v,
               std::size_t len) {
    for (std::size_t j = 0; j < len; ++j) ci[j] += v * bk[j];
}

// One tile of the product: all rows of a/c, k in [k0, k1), columns [j0, j1).
// For every output entry the k contributions arrive in ascending order, so
// tiling leaves the summation order (and therefore every bit of the result)
// identical to the untiled i-k-j loop. Four output rows share every loaded
// row of b.
void matmul_tile(const Matrix& a, const Matrix& b, Matrix& c, std::size_t k0,
                 std::size_t k1, std::size_t j0, std::size_t j1) {
    const std::size_t len = j1 - j0;
    std::size_t i = 0;
    for (; i + 4 <= a.rows(); i += 4) {
        double* c0 = c.row_data(i) + j0;
        double* c1 = c.row_data(i + 1) + j0;
        double* c2 = c.row_data(i + 2) + j0;
        double* c3 = c.row_data(i + 3) + j0;
        const double* a0 = a.row_data(i);
        const double* a1 = a.row_data(i + 1);
        const double* a2 = a.row_data(i + 2);
        const double* a3 = a.row_data(i + 3);
        for (std::size_t k = k0; k < k1; ++k) {
            const double v0 = a0[k], v1 = a1[k], v2 = a2[k], v3 = a3[k];
            if (v0 == 0.0 && v1 == 0.0 && v2 == 0.0 && v3 == 0.0) continue;
            axpy_row4(c0, c1, c2, c3, b.row_data(k) + j0, v0, v1, v2, v3, len);
        }
    }
    for (; i < a.rows(); ++i) {
        double* ci = c.row_data(i) + j0;
        const double* ai = a.row_data(i);
        for (std::size_t k = k0; k < k1; ++k) {
            const double aik = ai[k];
            if (aik == 0.0) continue;
            axpy_row1(ci, b.row_data(k) + j0, aik, len);
        }
    }
}

}  // namespace

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("matmul: cannot multiply " + shape_str(a.rows(), a.cols()) +
                             " by " + shape_str(b.rows(), b.cols()));
    }
    Matrix c(a.rows(), b.cols());
    const std::size_t n = b.cols();
    const std::size_t inner = a.cols();
    // Tiles sized so a panel of b stays resident in L2 while every row of a
    // passes over it.
    constexpr std::size_t kKBlock = 128;
    constexpr std::size_t kJBlock = 512;
    for (std::size_t j0 = 0; j0 < n; j0 += kJBlock) {
        const std::size_t j1 = std::min(j0 + kJBlock, n);
        for (std::size_t k0 = 0; k0 < inner; k0 += kKBlock) {
            matmul_tile(a, b, c, k0, std::min(k0 + kKBlock, inner), j0, j1);
        }
    }
    return c;
}

Vector matvec(const Matrix& a, const Vector& v) {
    if (a.cols() != v.size()) {
        throw DimensionError("matvec: cannot multiply " + shape_str(a.rows(), a.cols()) +
                             " by vector of length " + std::to_string(v.size()));
    }
    Vector out(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* ai = a.row_data(i);
        double acc = 0.0;
        for (std::size_t k = 0; k < a.cols(); ++k) acc += ai[k] * v[k];
        out[i] = acc;
    }
    return out;
}

namespace {
void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(op) + ": shape mismatch " +
                             shape_str(a.rows(), a.cols()) + " vs " +
                             shape_str(b.rows(), b.cols()));
    }
}
}  // namespace

Matrix add(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "add");
    Matrix c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c.data()[i] += b.data()[i];
    return c;
}

Matrix subtract(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "subtract");
    Matrix c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c.data()[i] -= b.data()[i];
    return c;
}

Matrix scaled(const Matrix& a, double s) {
    Matrix c = a;
    for (double& v : c.data()) v *= s;
    return c;
}

void axpy_in_place(Matrix& a, double s, const Matrix& b) {
    require_same_shape(a, b, "axpy");
    for (std::size_t i = 0; i < a.size(); ++i) a.data()[i] += s * b.data()[i];
}

double frobenius_norm(const Matrix& a) {
    double acc = 0.0;
    for (double v : a.data()) acc += v * v;
    return std::sqrt(acc);
}

double max_abs(const Matrix& a) {
    double m = 0.0;
    for (double v : a.data()) m = std::max(m, std::fabs(v));
    return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::fabs(a.data()[i] - b.data()[i]));
    }
    return m;
}

}  // namespace zeroinit
