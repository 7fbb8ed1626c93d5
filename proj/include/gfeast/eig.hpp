#pragma once

#include <cstdint>
#include <vector>

#include "gfeast/cmatrix.hpp"

namespace gfeast {

// Unitary reduction to upper Hessenberg form, reflectors kept for
// back-transforming eigenvectors.
struct HessenbergForm {
    CMatrix H;
    CMatrix v;                // Householder vectors, column k annihilates rows k+2..n-1
    std::vector<double> beta;
};

HessenbergForm hessenberg_reduce(const CMatrix& a);

// Eigenvalues of an upper Hessenberg matrix by the shifted QR iteration with
// deflation.  Throws NonConvergenceError when the sweep budget (30 n) runs out.
std::vector<cd> hessenberg_eigenvalues(CMatrix h);

// Eigenvalues of a general dense matrix.
std::vector<cd> dense_eigenvalues(const CMatrix& a);

struct DenseEigs {
    std::vector<cd> values;
    CMatrix vectors; // unit 2-norm columns, vectors.col(i) belongs to values[i]
};

// Eigenvalues and eigenvectors; vectors come from inverse iteration on the
// Hessenberg form, back-transformed.
DenseEigs dense_eigs(const CMatrix& a, std::uint64_t seed = 987654321);

} // namespace gfeast
