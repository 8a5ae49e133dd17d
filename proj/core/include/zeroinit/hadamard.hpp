#pragma once

#include <cstddef>
#include <span>

#include "zeroinit/matrix.hpp"

namespace zeroinit {

/// Largest supported Hadamard order: 2^16 = 65536.
inline constexpr std::size_t kMaxHadamardOrder = 16;

/// Sylvester-construction Hadamard matrix H_m of size 2^m x 2^m with entries
/// +-1. H_0 = [1], H_m = [[H, H], [H, -H]].
Matrix hadamard_matrix(std::size_t m);

/// In-place unnormalized fast Walsh-Hadamard transform: v <- H_m v for
/// n = 2^m. Returns the number of butterfly passes performed (= m). The
/// 2^{-(m-1)/2} scale of the initialization scheme is applied by the caller,
/// which keeps this transform exact on integer input.
std::size_t fwht_in_place(std::span<double> v);

/// Out-of-place convenience wrapper around fwht_in_place.
Vector fwht(const Vector& v);

}  // namespace zeroinit
