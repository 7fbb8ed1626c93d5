#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gfeast/cmatrix.hpp"
#include "gfeast/projector.hpp"
#include "gfeast/quadrature.hpp"

namespace gfeast {

// Oblique (two-sided) reduction of the pencil onto a search space: the right
// basis U1 spans the search space, the left basis U2 spans B U1, so the
// reduced right-hand matrix is the triangular factor R2 itself.
struct ReducedPencil {
    CMatrix U1;   // orthonormal, n x t
    CMatrix U2;   // orthonormal basis of B U1, n x t
    CMatrix R2;   // upper triangular factor of B U1, t x t
    CMatrix Atil; // U2^H A U1
    CMatrix Btil; // U2^H B U1
};

struct EigenPair {
    cd lambda;
    std::vector<cd> y;      // reduced-space vector, length t
    std::vector<cd> x;      // full-space vector, unit 2-norm, length n
    double residual = -1.0; // negative means not yet computed
    bool inside = false;    // strictly inside the circle
    bool boundary = false;  // within kBoundaryRelTol * radius of the circle
};

using EigenPairSet = std::vector<EigenPair>;

// Relative distance from the circle below which a pair is flagged as a
// boundary case in reports.
inline constexpr double kBoundaryRelTol = 1e-12;

// Basis columns whose triangular factor diagonal collapses under this ratio
// mean the handed-in block lost full column rank.
inline constexpr double kBasisRankTol = 1e-12;

ReducedPencil oblique_reduce(const RegularPencil& p, const CMatrix& u);

// Eigenvalues of the reduced pencil via the dense kernel on Btil^{-1} Atil,
// reduced eigenvectors via two inverse-iteration steps on (Atil - lambda Btil).
EigenPairSet solve_projected(const ReducedPencil& rp, std::uint64_t seed = 246813579);

// Relative block residual |A x - lambda B x| / (|A x| + |B x|).
double residual(const RegularPencil& p, cd lambda, const std::vector<cd>& x);

// Lifts reduced vectors to the full space (x = U1 y, normalized) and fills in
// residuals.
void complete_pairs(const RegularPencil& p, const CMatrix& u1, EigenPairSet& pairs);

struct FilterResult {
    EigenPairSet kept;         // pairs strictly inside with residual < eta
    int count = 0;             // kept.size()
    std::optional<double> err; // max kept residual; empty when nothing was kept
};

// Marks inside/boundary flags against the circle and keeps the converged
// inside pairs.  Residuals must already be populated.
FilterResult filter_inside(const Contour& c, EigenPairSet& pairs, double eta);

} // namespace gfeast
