#include "zeroinit/csv.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace zeroinit {

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += header[i];
    }
    buffer_ += '\n';
}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) {
        throw DomainError("csv: row has " + std::to_string(cells.size()) +
                          " cells, header has " + std::to_string(columns_));
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += cells[i];
    }
    buffer_ += '\n';
}

void CsvWriter::write_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out.write(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
    if (!out) throw IoError("write failed for " + path);
}

void write_matrix_csv(const Matrix& m, const std::string& path) {
    std::vector<std::string> header;
    header.reserve(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) header.push_back("c" + std::to_string(j));
    CsvWriter writer(std::move(header));
    std::vector<std::string> cells(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) cells[j] = format_double(m(i, j));
        writer.add_row(cells);
    }
    writer.write_file(path);
}

Matrix read_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw FormatError("csv: missing header in " + path);

    std::vector<std::vector<double>> rows;
    std::size_t cols = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            double value = 0.0;
            const auto res =
                std::from_chars(cell.data(), cell.data() + cell.size(), value);
            if (res.ec != std::errc{}) {
                throw FormatError("csv: bad number '" + cell + "' in " + path);
            }
            row.push_back(value);
        }
        if (cols == 0) {
            cols = row.size();
        } else if (row.size() != cols) {
            throw FormatError("csv: ragged row in " + path);
        }
        rows.push_back(std::move(row));
    }
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

}  // namespace zeroinit
