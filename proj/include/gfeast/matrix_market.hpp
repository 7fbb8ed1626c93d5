#pragma once

#include <string>

#include "gfeast/cmatrix.hpp"

namespace gfeast {

struct MMHeader {
    std::string format;   // "coordinate" or "array"
    std::string field;    // "real", "complex", "integer", "pattern"
    std::string symmetry; // "general", "symmetric", "skew-symmetric", "hermitian"
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t entries = 0; // stored entries (coordinate only)
};

// Reads a Matrix Market file into a dense matrix.  Symmetric, hermitian and
// skew-symmetric storage is expanded; duplicate entries (including mirror
// conflicts) are rejected; skew-symmetric files may not carry diagonal
// entries.  Throws MatrixMarketError with the offending line on bad input.
CMatrix read_matrix_market(const std::string& path, MMHeader* header = nullptr);

// Writes a dense matrix in array/complex/general form with full precision,
// so reading it back reproduces the matrix exactly.
void write_matrix_market_array(const std::string& path, const CMatrix& m);

} // namespace gfeast
