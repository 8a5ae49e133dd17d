#pragma once

#include <cstdint>
#include <cstddef>
#include <string>

#include "zeroinit/matrix.hpp"

namespace zeroinit {

/// Weight-initialization schemes. ZerO and PartialIdentityOnly are fully
/// deterministic; Constant carries its value; the random baselines carry an
/// explicit seed — there is no ambient randomness anywhere in the project.
struct InitScheme {
    enum class Kind {
        ZerO,                 // identity / partial identity / scaled Hadamard
        PartialIdentityOnly,  // partial identity everywhere (no Hadamard)
        Constant,
        RandomFanIn,   // variance gain^2 / fan_in   ("kaiming" with gain sqrt(2))
        RandomFanAvg,  // variance 2 gain^2 / (fan_in + fan_out) ("xavier" with gain 1)
    };

    Kind kind = Kind::ZerO;
    double constant_value = 0.0;
    double gain = 1.0;
    std::uint64_t seed = 0;
    // ZerO only: use c = 2^{-m/2} (exactly orthonormal Hadamard columns)
    // instead of the written 2^{-(m-1)/2}.
    bool strict_orthonormal = false;

    static InitScheme zero() { return {}; }
    static InitScheme partial_identity_only() {
        InitScheme s;
        s.kind = Kind::PartialIdentityOnly;
        return s;
    }
    static InitScheme constant(double c);
    static InitScheme kaiming(std::uint64_t seed);
    static InitScheme xavier(std::uint64_t seed);
    static InitScheme fan_in(double gain, std::uint64_t seed);
    static InitScheme fan_avg(double gain, std::uint64_t seed);

    bool is_random() const {
        return kind == Kind::RandomFanIn || kind == Kind::RandomFanAvg;
    }

    /// Names used in CLI configs: "zero", "partial_identity", "constant",
    /// "kaiming", "xavier".
    static InitScheme::Kind kind_from_name(const std::string& name);
    static std::string kind_name(Kind kind);
};

/// c_out x c_in x k x k convolution kernel, row-major, odd k.
struct Kernel4D {
    std::size_t c_out = 0, c_in = 0, k = 0;
    std::vector<double> data;

    Kernel4D() = default;
    Kernel4D(std::size_t c_out, std::size_t c_in, std::size_t k);

    double& at(std::size_t o, std::size_t i, std::size_t y, std::size_t x) {
        return data[((o * c_in + i) * k + y) * k + x];
    }
    double at(std::size_t o, std::size_t i, std::size_t y, std::size_t x) const {
        return data[((o * c_in + i) * k + y) * k + x];
    }

    /// The spatial slice [:,:,y,x] as a c_out x c_in matrix.
    Matrix slice(std::size_t y, std::size_t x) const;
};

/// Rectangular identity I*: square identity, (I | 0) when rows < cols, its
/// transpose when rows > cols. Clips trailing dimensions or zero-pads.
Matrix partial_identity(std::size_t rows, std::size_t cols);

/// Deterministic zeros-and-ones initialization of a p x q matrix:
///   p == q -> I
///   p <  q -> I*
///   p >  q -> c I* H_m I*   with m = ceil(log2 p), c = 2^{-(m-1)/2}
/// (c = 2^{-m/2} when strict_orthonormal). Every entry is 0, 1 or +-c.
Matrix zero_init_matrix(std::size_t p, std::size_t q, bool strict_orthonormal = false);

/// Kernel variant: everything zero except the center spatial slice, which is
/// zero_init_matrix(c_out, c_in). k must be odd.
Kernel4D zero_init_conv(std::size_t c_out, std::size_t c_in, std::size_t k,
                        bool strict_orthonormal = false);

/// Seeded random baseline (SplitMix64 + Box-Muller, documented in rng.hpp).
/// Entries are drawn in row-major order; identical arguments give
/// bit-identical matrices.
Matrix random_init(const InitScheme& scheme, std::size_t rows, std::size_t cols);

struct Census {
    std::int64_t zeros = 0;
    std::int64_t ones = 0;
    std::int64_t other_nonzero = 0;

    std::int64_t total() const { return zeros + ones + other_nonzero; }
    Census& operator+=(const Census& rhs);
};

/// Exact counts of entries equal to 0, equal to 1, and anything else
/// (Hadamard-scaled entries land in other_nonzero).
Census census(const Matrix& m);
Census census(const Kernel4D& k);

}  // namespace zeroinit
