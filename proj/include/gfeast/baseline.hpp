#pragma once

#include <cstdint>

#include "gfeast/driver.hpp"
#include "gfeast/extraction.hpp"
#include "gfeast/projector.hpp"

namespace gfeast {

// Moment-based contour solver with a one-sided (Galerkin) extraction.  Kept
// as a baseline: it breaks down whenever the search space is B-orthogonal to
// itself under A, which the two-sided extraction in gfeast() tolerates.
struct CirrOptions {
    std::size_t q = 16;        // quadrature nodes
    std::size_t h = 10;        // random probe columns
    std::size_t g = 4;         // moments accumulated per probe
    double eta = 1e-3;         // residual threshold for keeping a pair
    double eps = 1e-12;        // convergence target
    std::size_t max_rounds = 1; // extraction rounds (refinement re-projects kept vectors)
    double rrqr_tol = kRrqrTol;
    std::uint64_t seed = 123456789;
};

GfeastReport block_cirr(const RegularPencil& p, const Contour& c, const CirrOptions& opts);

// One Galerkin reduction W^H A W, W^H B W with W the projected probe block.
struct GalerkinResult {
    CMatrix W;     // projected probe block (not orthonormalized)
    CMatrix Ahat;  // W^H A W
    CMatrix Bhat;  // W^H B W
    EigenPairSet pairs; // extracted pairs when Bhat was invertible
    bool solved = false;
};

GalerkinResult galerkin_step(const RegularPencil& p, const ShiftedFactorSet& fs,
                             const CMatrix& y);

} // namespace gfeast
