#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "zeroinit/errors.hpp"

namespace zeroinit {

using Vector = std::vector<double>;

/// Dense row-major matrix of 64-bit reals. All arithmetic in this project is
/// double precision with a fixed, documented reduction order so that traces
/// are bit-reproducible.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);  // zero-filled
    Matrix(std::size_t rows, std::size_t cols, double fill);

    // Construction from literals; rejects NaN/Inf and ragged rows.
    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
    static Matrix identity(std::size_t n);
    static Matrix column(const Vector& v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double* row_data(std::size_t i) { return data_.data() + i * cols_; }
    const double* row_data(std::size_t i) const { return data_.data() + i * cols_; }
    std::span<const double> row(std::size_t i) const { return {row_data(i), cols_}; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    bool operator==(const Matrix&) const = default;

    Matrix transposed() const;
    bool all_finite() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Exact mathematical product. Summation over the inner index is strictly
/// left-to-right for every output entry, independent of matrix size.
Matrix matmul(const Matrix& a, const Matrix& b);

/// a * v with the same left-to-right reduction order.
Vector matvec(const Matrix& a, const Vector& v);

Matrix add(const Matrix& a, const Matrix& b);
Matrix subtract(const Matrix& a, const Matrix& b);
Matrix scaled(const Matrix& a, double s);

/// a - s * b, used for gradient-descent updates.
void axpy_in_place(Matrix& a, double s, const Matrix& b);

double frobenius_norm(const Matrix& a);
double max_abs(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace zeroinit
