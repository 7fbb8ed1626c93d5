#pragma once

#include <cstddef>
#include <vector>

#include "gfeast/cmatrix.hpp"
#include "gfeast/lu.hpp"
#include "gfeast/quadrature.hpp"

namespace gfeast {

// Regular pencil (A, B): square, same size, det(zB - A) not identically zero.
struct RegularPencil {
    CMatrix A;
    CMatrix B;

    std::size_t n() const { return A.rows(); }
    void validate() const;
};

// LU factorizations of z_j B - A for every quadrature node.
struct ShiftedFactorSet {
    ContourRule rule;
    std::vector<LuFactors> factors;
};

// Factors all shifted matrices.  Throws ContourSpectrumError, listing the
// offending node indices, when any z_j B - A is singular; the caller should
// move the circle or change its radius.
ShiftedFactorSet shifted_factorizations(const RegularPencil& p, const ContourRule& rule);

// Quadrature approximation of the spectral projector applied to a block:
// sum_j w_j (z_j B - A)^{-1} B Y.  Summation always runs in node order, so
// the result does not depend on thread count.
CMatrix apply_projector(const ShiftedFactorSet& fs, const RegularPencil& p, const CMatrix& y);

// Moment blocks [F_0 Y, ..., F_{g-1} Y] with F_i = sum_j w_j z_j^i (z_j B - A)^{-1}.
// Note there is no B factor inside the moments.
struct MomentBlock {
    std::vector<CMatrix> blocks;
};

MomentBlock apply_moments(const ShiftedFactorSet& fs, const CMatrix& y, std::size_t g);

} // namespace gfeast
