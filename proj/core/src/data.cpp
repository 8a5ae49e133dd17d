#include "zeroinit/dataset.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "zeroinit/rng.hpp"
#include "zeroinit/svd.hpp"

namespace zeroinit {

namespace {

std::uint32_t read_u32_be(std::istream& in, const std::string& path) {
    unsigned char bytes[4];
    if (!in.read(reinterpret_cast<char*>(bytes), 4)) {
        throw FormatError("idx: truncated header in " + path);
    }
    return (std::uint32_t{bytes[0]} << 24) | (std::uint32_t{bytes[1]} << 16) |
           (std::uint32_t{bytes[2]} << 8) | std::uint32_t{bytes[3]};
}

std::ifstream open_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return in;
}

IdxHeader read_idx_header_stream(std::istream& in, const std::string& path) {
    IdxHeader h;
    h.magic = read_u32_be(in, path);
    if (h.magic != kIdxImagesMagic && h.magic != kIdxLabelsMagic) {
        throw FormatError("idx: bad magic in " + path);
    }
    const std::size_t ndims = h.magic & 0xff;
    for (std::size_t i = 0; i < ndims; ++i) h.dims.push_back(read_u32_be(in, path));
    return h;
}

}  // namespace

IdxHeader read_idx_header(const std::string& path) {
    auto in = open_binary(path);
    return read_idx_header_stream(in, path);
}

Dataset load_mnist(const std::string& images_path, const std::string& labels_path,
                   std::optional<std::size_t> limit) {
    auto images = open_binary(images_path);
    auto labels = open_binary(labels_path);

    const IdxHeader img_header = read_idx_header_stream(images, images_path);
    const IdxHeader lbl_header = read_idx_header_stream(labels, labels_path);
    if (img_header.magic != kIdxImagesMagic) {
        throw FormatError("idx: " + images_path + " is not an image file");
    }
    if (lbl_header.magic != kIdxLabelsMagic) {
        throw FormatError("idx: " + labels_path + " is not a label file");
    }
    if (img_header.dims[0] != lbl_header.dims[0]) {
        throw FormatError("idx: image count " + std::to_string(img_header.dims[0]) +
                          " != label count " + std::to_string(lbl_header.dims[0]));
    }

    const std::size_t total = img_header.dims[0];
    const std::size_t pixels =
        std::size_t{img_header.dims[1]} * std::size_t{img_header.dims[2]};
    const std::size_t count = limit ? std::min(*limit, total) : total;

    Dataset data;
    data.inputs = Matrix(count, pixels);
    data.targets = Matrix(count, 10);

    std::vector<unsigned char> row(pixels);
    for (std::size_t i = 0; i < count; ++i) {
        if (!images.read(reinterpret_cast<char*>(row.data()), pixels)) {
            throw FormatError("idx: truncated image data in " + images_path);
        }
        double* dst = data.inputs.row_data(i);
        for (std::size_t j = 0; j < pixels; ++j) dst[j] = row[j] / 255.0;

        unsigned char label = 0;
        if (!labels.read(reinterpret_cast<char*>(&label), 1)) {
            throw FormatError("idx: truncated label data in " + labels_path);
        }
        if (label > 9) {
            throw FormatError("idx: label " + std::to_string(label) + " out of range in " +
                              labels_path);
        }
        data.targets(i, label) = 1.0;
    }
    return data;
}

void standardize_in_place(Dataset& data) {
    const std::size_t p = data.count();
    const std::size_t n = data.input_dim();
    if (p == 0) return;
    for (std::size_t j = 0; j < n; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < p; ++i) mean += data.inputs(i, j);
        mean /= static_cast<double>(p);
        double var = 0.0;
        for (std::size_t i = 0; i < p; ++i) {
            const double d = data.inputs(i, j) - mean;
            var += d * d;
        }
        const double stddev = std::max(std::sqrt(var / static_cast<double>(p)), 1e-12);
        for (std::size_t i = 0; i < p; ++i) {
            data.inputs(i, j) = (data.inputs(i, j) - mean) / stddev;
        }
    }
}

Dataset synthetic_from_teacher(const Matrix& teacher, std::uint64_t seed, std::size_t p,
                               double noise_std) {
    if (p == 0) throw DomainError("synthetic dataset: p must be >= 1");
    const std::size_t n_x = teacher.cols();
    const std::size_t n_y = teacher.rows();
    // Separate substreams for inputs and noise, so noise_std = 0 and > 0 share
    // identical inputs.
    SplitMix64 xs(SplitMix64::derive(seed, 1));
    SplitMix64 ns(SplitMix64::derive(seed, 2));

    Dataset data;
    data.inputs = Matrix(p, n_x);
    data.targets = Matrix(p, n_y);
    Vector x(n_x);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < n_x; ++j) x[j] = xs.next_normal();
        for (std::size_t j = 0; j < n_x; ++j) data.inputs(i, j) = x[j];
        Vector y = matvec(teacher, x);
        for (std::size_t j = 0; j < n_y; ++j) {
            data.targets(i, j) = y[j] + (noise_std != 0.0 ? noise_std * ns.next_normal() : 0.0);
        }
    }
    return data;
}

Dataset synthetic_teacher(std::uint64_t seed, std::size_t n_x, std::size_t n_y,
                          std::size_t p, double noise_std) {
    SplitMix64 ts(SplitMix64::derive(seed, 0));
    Matrix teacher(n_y, n_x);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_x));
    for (double& v : teacher.data()) v = scale * ts.next_normal();
    return synthetic_from_teacher(teacher, seed, p, noise_std);
}

Dataset whiten(const Dataset& data) {
    const std::size_t p = data.count();
    const std::size_t n = data.input_dim();
    if (p < n) {
        throw DomainError("whiten: needs P >= N_x, got P=" + std::to_string(p) +
                          ", N_x=" + std::to_string(n));
    }
    const SvdResult x_svd = svd(data.inputs);
    const double sigma_max = x_svd.singular_values.front();
    const double sigma_min = x_svd.singular_values.back();
    if (sigma_max == 0.0 || sigma_min <= 1e-12 * sigma_max) {
        throw DomainError("whiten: singular input second-moment matrix");
    }
    // ZCA transform V diag(1/sigma) V^T; already-white inputs are returned
    // unchanged up to roundoff.
    const std::size_t k = x_svd.singular_values.size();
    Matrix v_scaled = x_svd.right_vectors;  // n x k
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) v_scaled(i, j) /= x_svd.singular_values[j];
    }
    const Matrix transform = matmul(v_scaled, x_svd.right_vectors.transposed());
    Dataset out;
    out.inputs = matmul(data.inputs, transform);
    out.targets = data.targets;
    return out;
}

namespace {
constexpr char kCacheTag[4] = {'Z', 'D', 'S', '1'};

void write_u32_le(std::ostream& out, std::uint32_t v) {
    unsigned char bytes[4] = {static_cast<unsigned char>(v & 0xff),
                              static_cast<unsigned char>((v >> 8) & 0xff),
                              static_cast<unsigned char>((v >> 16) & 0xff),
                              static_cast<unsigned char>((v >> 24) & 0xff)};
    out.write(reinterpret_cast<const char*>(bytes), 4);
}

std::uint32_t read_u32_le(std::istream& in, const std::string& path) {
    unsigned char bytes[4];
    if (!in.read(reinterpret_cast<char*>(bytes), 4)) {
        throw FormatError("cache: truncated header in " + path);
    }
    return std::uint32_t{bytes[0]} | (std::uint32_t{bytes[1]} << 8) |
           (std::uint32_t{bytes[2]} << 16) | (std::uint32_t{bytes[3]} << 24);
}

void write_doubles(std::ostream& out, const std::vector<double>& values) {
    // Assumes a little-endian host (checked at load).
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(double)));
}
}  // namespace

void save_cache(const Dataset& data, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out.write(kCacheTag, 4);
    write_u32_le(out, static_cast<std::uint32_t>(data.count()));
    write_u32_le(out, static_cast<std::uint32_t>(data.input_dim()));
    write_u32_le(out, static_cast<std::uint32_t>(data.target_dim()));
    write_doubles(out, data.inputs.data());
    write_doubles(out, data.targets.data());
    if (!out) throw IoError("write failed for " + path);
}

Dataset load_cache(const std::string& path) {
    auto in = open_binary(path);
    char tag[4];
    if (!in.read(tag, 4) || std::memcmp(tag, kCacheTag, 4) != 0) {
        throw FormatError("cache: bad tag in " + path);
    }
    const std::uint32_t p = read_u32_le(in, path);
    const std::uint32_t n_x = read_u32_le(in, path);
    const std::uint32_t n_y = read_u32_le(in, path);
    Dataset data;
    data.inputs = Matrix(p, n_x);
    data.targets = Matrix(p, n_y);
    auto read_block = [&](std::vector<double>& dst) {
        if (!in.read(reinterpret_cast<char*>(dst.data()),
                     static_cast<std::streamsize>(dst.size() * sizeof(double)))) {
            throw FormatError("cache: truncated payload in " + path);
        }
    };
    read_block(data.inputs.data());
    read_block(data.targets.data());
    return data;
}

}  // namespace zeroinit
