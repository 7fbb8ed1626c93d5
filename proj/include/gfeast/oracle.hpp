#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gfeast/cmatrix.hpp"
#include "gfeast/eig.hpp"
#include "gfeast/projector.hpp"
#include "gfeast/quadrature.hpp"

namespace gfeast {

// Full finite spectrum of a regular pencil by shift-invert: eigenvalues mu of
// (A - sigma B)^{-1} B map to lambda = sigma + 1/mu; tiny mu means an
// infinite eigenvalue.
struct OracleEigs {
    std::vector<cd> finite;
    std::size_t infinite_count = 0;
    CMatrix vectors; // right eigenvectors, one column per finite eigenvalue
};

// |mu| <= tol * max |mu| in the shift-invert spectrum is treated as an
// infinite eigenvalue.  A defective infinite block of size d splits the zero
// eigenvalue to magnitude eps^(1/d), so the cutoff sits well above the d = 2
// splitting (~1e-8) while staying far below 1/distance for any genuinely
// finite eigenvalue at realistic distances from the shift.
inline constexpr double kInfiniteEigTol = 1e-6;

OracleEigs oracle_pencil_eigs(const RegularPencil& p, std::uint64_t seed = 13571113);

// Pencil built from its canonical block structure: T A S = diag(J, I),
// T B S = diag(I, N) with J holding the finite Jordan blocks and N nilpotent.
struct WeierstrassSpec {
    std::vector<std::pair<cd, std::size_t>> jordan; // finite blocks: (eigenvalue, size)
    std::vector<std::size_t> nilpotent_blocks;      // sizes of the infinite part
    double cond = 1.0;                              // condition number of T and S
    std::uint64_t seed = 1;
};

struct FixtureTruth {
    RegularPencil pencil;
    Contour contour;
    CMatrix T, S;                // transformations used to scramble the canonical form
    std::vector<cd> inside;      // finite eigenvalues inside the circle, with multiplicity
    std::vector<cd> outside;     // finite eigenvalues outside
    std::size_t infinite_count = 0;
    int s = 0;                   // inside.size()
    CMatrix exact_projector;     // spectral projector onto the inside blocks
    CMatrix inside_vectors;      // one right eigenvector per inside block
    std::vector<std::size_t> inside_block_sizes;
};

// Fixtures refuse eigenvalues closer to the circle than this (relative).
inline constexpr double kFixtureBoundaryGuard = 1e-8;

FixtureTruth weierstrass_fixture(const WeierstrassSpec& spec, const Contour& contour);

} // namespace gfeast
