#pragma once

#include <stdexcept>
#include <string>

namespace zeroinit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shape mismatch between operands; message names both shapes.
struct DimensionError : Error {
    using Error::Error;
};

// Mathematically undefined request (stable rank of a zero matrix, fraction >= 1, ...).
struct DomainError : Error {
    using Error::Error;
};

// Guard against sizes outside the supported range (e.g. Hadamard order > 16).
struct SizeLimitError : Error {
    using Error::Error;
};

struct ConvergenceError : Error {
    ConvergenceError(const std::string& msg, double residual_)
        : Error(msg), residual(residual_) {}
    double residual;
};

struct IoError : Error {
    using Error::Error;
};

// Malformed IDX / cache file: bad magic, truncated payload, count mismatch.
struct FormatError : IoError {
    using IoError::IoError;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace zeroinit
