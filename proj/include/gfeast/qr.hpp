#pragma once

#include <cstddef>
#include <vector>

#include "gfeast/cmatrix.hpp"

namespace gfeast {

struct QrFactors {
    CMatrix Q;             // orthonormal columns, m x k with k = min(m, n)
    CMatrix R;             // upper triangular/trapezoidal, k x n
    std::vector<int> perm; // column permutation (pivoted variant only): input column perm[j] landed in slot j
    int rank = -1;         // detected numerical rank (pivoted variant only)
};

// Default relative tolerance for the rank test in rrqr.
inline constexpr double kRrqrTol = 1e-12;

// Householder QR, thin form.  Requires rows >= cols.
QrFactors qr(const CMatrix& m);

// Column-pivoted QR.  Any shape.  rank counts the diagonal entries of R with
// |R(i,i)| > rel_tol * |R(0,0)|; the pivoting makes that diagonal
// non-increasing in magnitude.
QrFactors rrqr(const CMatrix& m, double rel_tol = kRrqrTol);

} // namespace gfeast
