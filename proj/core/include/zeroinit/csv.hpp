#pragma once

#include <string>
#include <vector>

#include "zeroinit/matrix.hpp"

namespace zeroinit {

/// CSV conventions shared by every emitted file: '.' decimal point,
/// 17 significant digits (round-trip safe for doubles), mandatory header row.
std::string format_double(double v);

/// Minimal CSV writer producing deterministic bytes.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);

    void add_row(const std::vector<std::string>& cells);
    const std::string& str() const { return buffer_; }
    void write_file(const std::string& path) const;

private:
    std::size_t columns_;
    std::string buffer_;
};

void write_matrix_csv(const Matrix& m, const std::string& path);
Matrix read_matrix_csv(const std::string& path);

}  // namespace zeroinit
