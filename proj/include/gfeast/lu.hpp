#pragma once

#include <cstddef>
#include <vector>

#include "gfeast/cmatrix.hpp"

namespace gfeast {

// LU factorization with partial pivoting, L and U packed into one matrix.
struct LuFactors {
    CMatrix lu;               // unit lower triangle below, U on and above the diagonal
    std::vector<int> perm;    // row permutation: row perm[k] of the input became row k
    bool singular = false;    // some pivot fell below pivot_floor
    int first_bad_pivot = -1; // index of the first such pivot
    double pivot_floor = 0.0; // threshold used for the singularity test
};

// Threshold scale: a pivot below 1e-13 times the largest initial column norm
// marks the matrix as singular.
inline constexpr double kPivotTol = 1e-13;

LuFactors lu_factor(const CMatrix& m);

// Solves op(x) = rhs for each column of rhs.  Throws SingularSystemError when
// the factorization was flagged singular.
CMatrix lu_solve(const LuFactors& f, const CMatrix& rhs);

// Solve that floors tiny pivots instead of failing.  Used by inverse
// iteration, where a nearly singular shifted matrix is the point.
CMatrix lu_solve_floored(const LuFactors& f, const CMatrix& rhs);

} // namespace gfeast
