#include "zeroinit/hadamard.hpp"

#include <string>

namespace zeroinit {

Matrix hadamard_matrix(std::size_t m) {
    if (m > kMaxHadamardOrder) {
        throw SizeLimitError("hadamard_matrix: order " + std::to_string(m) +
                             " exceeds limit " + std::to_string(kMaxHadamardOrder));
    }
    const std::size_t n = std::size_t{1} << m;
    Matrix h(n, n);
    h(0, 0) = 1.0;
    // Block doubling: copy the current k x k corner into the three other
    // quadrants, negating the bottom-right one.
    for (std::size_t k = 1; k < n; k <<= 1) {
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                const double v = h(i, j);
                h(i, j + k) = v;
                h(i + k, j) = v;
                h(i + k, j + k) = -v;
            }
        }
    }
    return h;
}

std::size_t fwht_in_place(std::span<double> v) {
    const std::size_t n = v.size();
    if (n == 0 || (n & (n - 1)) != 0) {
        throw DimensionError("fwht: length " + std::to_string(n) +
                             " is not a power of two");
    }
    std::size_t passes = 0;
    for (std::size_t half = 1; half < n; half <<= 1) {
        for (std::size_t start = 0; start < n; start += 2 * half) {
            for (std::size_t i = start; i < start + half; ++i) {
                const double a = v[i];
                const double b = v[i + half];
                v[i] = a + b;
                v[i + half] = a - b;
            }
        }
        ++passes;
    }
    return passes;
}

Vector fwht(const Vector& v) {
    Vector out = v;
    fwht_in_place(out);
    return out;
}

}  // namespace zeroinit
