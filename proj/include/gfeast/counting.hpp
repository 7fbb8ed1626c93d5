#pragma once

#include <cstdint>
#include <vector>

#include "gfeast/cmatrix.hpp"
#include "gfeast/projector.hpp"
#include "gfeast/qr.hpp"

namespace gfeast {

struct SearchOptions {
    std::size_t p = 50;          // probe block size
    double alpha = 1.5;          // growth factor, must exceed 1
    double rrqr_tol = kRrqrTol;  // rank test tolerance
    std::uint64_t seed = 123456789;
};

struct SearchResult {
    int t = 0;            // certified upper bound on the eigenvalue count
    CMatrix U1;           // orthonormal basis of the detected subspace, n x t
    double s0 = 0.0;      // raw stochastic trace estimate
    int rounds = 0;       // rank-detection rounds run
    bool rank_warning = false;         // basis grew to fill the whole space
    std::vector<int> s_dagger_history; // target sizes, one per round
};

// Stochastic count estimate (1/p) Re trace(Y^H U) for U = P Y with p probes.
double estimate_count(const CMatrix& y, const CMatrix& u);

// Certified upper bound t >= s on the number of eigenvalues inside the
// contour: project a probe block, estimate the count, then grow the block
// until the detected rank falls short of the target size.
SearchResult search_upper_bound(const RegularPencil& p, const ShiftedFactorSet& fs,
                                const SearchOptions& opts);

// A projected block whose relative norm falls below this is treated as the
// projection of an empty spectrum.  The quadrature noise floor sits around
// 1e-10 for well-separated outside eigenvalues, while a genuine inside
// eigenvalue keeps the relative norm above roughly 1/(sqrt(n) * cond).
inline constexpr double kEmptySpectrumFloor = 1e-9;

} // namespace gfeast
