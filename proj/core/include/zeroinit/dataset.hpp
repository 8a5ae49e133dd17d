#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "zeroinit/matrix.hpp"

namespace zeroinit {

/// P paired samples: inputs P x N_x, targets P x N_y, one sample per row.
struct Dataset {
    Matrix inputs;
    Matrix targets;

    std::size_t count() const { return inputs.rows(); }
    std::size_t input_dim() const { return inputs.cols(); }
    std::size_t target_dim() const { return targets.cols(); }
};

/// Header of an IDX file (big-endian on disk).
struct IdxHeader {
    std::uint32_t magic = 0;
    std::vector<std::uint32_t> dims;
};

inline constexpr std::uint32_t kIdxImagesMagic = 0x00000803;  // u8, 3 dims
inline constexpr std::uint32_t kIdxLabelsMagic = 0x00000801;  // u8, 1 dim

IdxHeader read_idx_header(const std::string& path);

/// MNIST loader: pixels flattened row-major to [0,1] doubles (byte/255),
/// labels one-hot in R^10. Throws FormatError on bad magic, truncation, or
/// an image/label count mismatch.
Dataset load_mnist(const std::string& images_path, const std::string& labels_path,
                   std::optional<std::size_t> limit = std::nullopt);

/// Per-feature standardization (x - mean) / std with a small std floor;
/// optional preprocessing, off by default.
void standardize_in_place(Dataset& data);

/// x ~ seeded standard normal, y = T x + eps with the given teacher matrix
/// and seeded noise of the given standard deviation.
Dataset synthetic_from_teacher(const Matrix& teacher, std::uint64_t seed, std::size_t p,
                               double noise_std);

/// Same, with the teacher itself drawn from the seed (entries ~ N(0, 1/n_x)).
Dataset synthetic_teacher(std::uint64_t seed, std::size_t n_x, std::size_t n_y,
                          std::size_t p, double noise_std);

/// ZCA-style whitening: returns the dataset with inputs transformed so that
/// sum_mu x x^T = I (within roundoff). Requires P >= N_x and a nonsingular
/// second-moment matrix; already-white inputs pass through unchanged.
Dataset whiten(const Dataset& data);

/// Binary cache: 16-byte header {tag 'Z','D','S','1', u32 P, u32 N_x, u32 N_y}
/// followed by inputs then targets as little-endian 64-bit floats. Round-trips
/// bit-identically.
void save_cache(const Dataset& data, const std::string& path);
Dataset load_cache(const std::string& path);

}  // namespace zeroinit
