#include "zeroinit/init.hpp"

#include <cmath>

#include "zeroinit/hadamard.hpp"
#include "zeroinit/rng.hpp"

namespace zeroinit {

InitScheme InitScheme::constant(double c) {
    if (!std::isfinite(c)) throw DomainError("InitScheme: constant must be finite");
    InitScheme s;
    s.kind = Kind::Constant;
    s.constant_value = c;
    return s;
}

InitScheme InitScheme::fan_in(double gain, std::uint64_t seed) {
    InitScheme s;
    s.kind = Kind::RandomFanIn;
    s.gain = gain;
    s.seed = seed;
    return s;
}

InitScheme InitScheme::fan_avg(double gain, std::uint64_t seed) {
    InitScheme s;
    s.kind = Kind::RandomFanAvg;
    s.gain = gain;
    s.seed = seed;
    return s;
}

InitScheme InitScheme::kaiming(std::uint64_t seed) {
    return fan_in(std::sqrt(2.0), seed);
}

InitScheme InitScheme::xavier(std::uint64_t seed) { return fan_avg(1.0, seed); }

InitScheme::Kind InitScheme::kind_from_name(const std::string& name) {
    if (name == "zero") return Kind::ZerO;
    if (name == "partial_identity") return Kind::PartialIdentityOnly;
    if (name == "constant") return Kind::Constant;
    if (name == "kaiming") return Kind::RandomFanIn;
    if (name == "xavier") return Kind::RandomFanAvg;
    throw ConfigError("unknown init scheme '" + name + "'");
}

std::string InitScheme::kind_name(Kind kind) {
    switch (kind) {
        case Kind::ZerO: return "zero";
        case Kind::PartialIdentityOnly: return "partial_identity";
        case Kind::Constant: return "constant";
        case Kind::RandomFanIn: return "kaiming";
        case Kind::RandomFanAvg: return "xavier";
    }
    return "?";
}

Kernel4D::Kernel4D(std::size_t c_out_, std::size_t c_in_, std::size_t k_)
    : c_out(c_out_), c_in(c_in_), k(k_), data(c_out_ * c_in_ * k_ * k_, 0.0) {
    if (k == 0 || k % 2 == 0) {
        throw DomainError("Kernel4D: kernel size must be odd, got " + std::to_string(k));
    }
}

Matrix Kernel4D::slice(std::size_t y, std::size_t x) const {
    Matrix m(c_out, c_in);
    for (std::size_t o = 0; o < c_out; ++o) {
        for (std::size_t i = 0; i < c_in; ++i) m(o, i) = at(o, i, y, x);
    }
    return m;
}

Matrix partial_identity(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
        throw DimensionError("partial_identity: dimensions must be positive");
    }
    Matrix m(rows, cols);
    const std::size_t d = std::min(rows, cols);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
    return m;
}

Matrix zero_init_matrix(std::size_t p, std::size_t q, bool strict_orthonormal) {
    if (p == 0 || q == 0) {
        throw DimensionError("zero_init_matrix: dimensions must be positive");
    }
    if (p <= q) return partial_identity(p, q);

    // Dimension-increasing case: rows of H_m clipped to p, columns to q,
    // scaled by c.
    std::size_t m = 0;
    while ((std::size_t{1} << m) < p) {
        if (++m > kMaxHadamardOrder) {
            throw SizeLimitError("zero_init_matrix: rows " + std::to_string(p) +
                                 " exceed 2^" + std::to_string(kMaxHadamardOrder));
        }
    }
    const double c = std::exp2(strict_orthonormal ? -0.5 * static_cast<double>(m)
                                                  : -0.5 * static_cast<double>(m - 1));
    // Row i of the result is the first q entries of row i of H_m; build each
    // row with the transform instead of materializing H_m.
    Matrix w(p, q);
    Vector basis(std::size_t{1} << m, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
        std::fill(basis.begin(), basis.end(), 0.0);
        basis[i] = 1.0;
        fwht_in_place(basis);  // H e_i = row i of H (H is symmetric)
        for (std::size_t j = 0; j < q; ++j) w(i, j) = c * basis[j];
    }
    return w;
}

Kernel4D zero_init_conv(std::size_t c_out, std::size_t c_in, std::size_t k,
                        bool strict_orthonormal) {
    Kernel4D kernel(c_out, c_in, k);
    const std::size_t n = k / 2;
    const Matrix center = zero_init_matrix(c_out, c_in, strict_orthonormal);
    for (std::size_t o = 0; o < c_out; ++o) {
        for (std::size_t i = 0; i < c_in; ++i) kernel.at(o, i, n, n) = center(o, i);
    }
    return kernel;
}

Matrix random_init(const InitScheme& scheme, std::size_t rows, std::size_t cols) {
    if (!scheme.is_random()) {
        throw DomainError("random_init: scheme is not a random variant");
    }
    const double fan_in = static_cast<double>(cols);
    const double fan_out = static_cast<double>(rows);
    const double variance = scheme.kind == InitScheme::Kind::RandomFanIn
                                ? scheme.gain * scheme.gain / fan_in
                                : 2.0 * scheme.gain * scheme.gain / (fan_in + fan_out);
    const double stddev = std::sqrt(variance);
    SplitMix64 rng(scheme.seed);
    Matrix m(rows, cols);
    for (double& v : m.data()) v = stddev * rng.next_normal();
    return m;
}

Census& Census::operator+=(const Census& rhs) {
    zeros += rhs.zeros;
    ones += rhs.ones;
    other_nonzero += rhs.other_nonzero;
    return *this;
}

namespace {
Census census_span(const std::vector<double>& values) {
    Census c;
    for (double v : values) {
        if (v == 0.0) {
            ++c.zeros;
        } else if (v == 1.0) {
            ++c.ones;
        } else {
            ++c.other_nonzero;
        }
    }
    return c;
}
}  // namespace

Census census(const Matrix& m) { return census_span(m.data()); }

Census census(const Kernel4D& k) { return census_span(k.data); }

}  // namespace zeroinit
