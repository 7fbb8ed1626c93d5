#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gfeast {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Shape mismatch between operands.
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

// Invalid parameter value (non-positive radius, zero block size, ...).
class ParameterError : public Error {
public:
    explicit ParameterError(const std::string& msg) : Error(msg) {}
};

// Triangular solve against a factorization whose pivot fell below the
// singularity threshold.  Carries the index of the offending pivot.
class SingularSystemError : public Error {
public:
    SingularSystemError(const std::string& msg, int pivot)
        : Error(msg + " (pivot " + std::to_string(pivot) + ")"), pivot_index(pivot) {}
    int pivot_index;
};

// One or more quadrature nodes produced a singular shifted matrix, i.e. the
// contour passes through (or numerically touches) the spectrum.  Carries the
// indices of the bad nodes so the caller can pick a different circle.
class ContourSpectrumError : public Error {
public:
    ContourSpectrumError(const std::string& msg, std::vector<int> nodes)
        : Error(msg), bad_nodes(std::move(nodes)) {}
    std::vector<int> bad_nodes;
};

// Subspace basis handed to the reduction step lost full column rank.
class RankDeficientBasisError : public Error {
public:
    explicit RankDeficientBasisError(const std::string& msg) : Error(msg) {}
};

// Reduced right-hand-side matrix is singular, so the projected eigenproblem
// cannot be formed.
class ProjectedSingularError : public Error {
public:
    explicit ProjectedSingularError(const std::string& msg) : Error(msg) {}
};

// Residual denominator vanished (zero vector against zero action).
class ResidualUndefinedError : public Error {
public:
    explicit ResidualUndefinedError(const std::string& msg) : Error(msg) {}
};

// Iterative eigensolver exceeded its sweep budget.
class NonConvergenceError : public Error {
public:
    explicit NonConvergenceError(const std::string& msg) : Error(msg) {}
};

// Malformed Matrix Market input.
class MatrixMarketError : public Error {
public:
    explicit MatrixMarketError(const std::string& msg) : Error(msg) {}
};

} // namespace gfeast
