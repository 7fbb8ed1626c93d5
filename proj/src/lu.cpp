#include "gfeast/lu.hpp"

#include <cmath>

#include "gfeast/errors.hpp"

namespace gfeast {

LuFactors lu_factor(const CMatrix& m) {
    if (m.rows() != m.cols())
        throw DimensionError("lu_factor: matrix must be square");
    const std::size_t n = m.rows();

    LuFactors f;
    f.lu = m;
    f.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) f.perm[i] = static_cast<int>(i);

    double max_col_norm = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        const cd* cj = m.col(j);
        for (std::size_t i = 0; i < n; ++i) s += std::norm(cj[i]);
        max_col_norm = std::max(max_col_norm, std::sqrt(s));
    }
    f.pivot_floor = kPivotTol * max_col_norm;

    CMatrix& a = f.lu;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(a(i, k));
            if (v > best) { best = v; p = i; }
        }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            std::swap(f.perm[k], f.perm[p]);
        }
        const cd piv = a(k, k);
        if (std::abs(piv) <= f.pivot_floor && !f.singular) {
            f.singular = true;
            f.first_bad_pivot = static_cast<int>(k);
        }
        // A zero pivot under partial pivoting means the whole subcolumn is
        // zero; nothing to eliminate.  Otherwise multipliers are bounded by 1.
        if (piv == cd(0.0, 0.0)) continue;
        cd* ck = a.col(k);
        for (std::size_t i = k + 1; i < n; ++i) ck[i] /= piv;
        for (std::size_t j = k + 1; j < n; ++j) {
            cd* cj = a.col(j);
            const cd akj = cj[k];
            if (akj == cd(0.0, 0.0)) continue;
            for (std::size_t i = k + 1; i < n; ++i) cj[i] -= ck[i] * akj;
        }
    }
    return f;
}

namespace {

void solve_one(const LuFactors& f, const cd* b, cd* x, bool floored) {
    const CMatrix& a = f.lu;
    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
    // forward: L y = P b
    for (std::size_t j = 0; j < n; ++j) {
        const cd xj = x[j];
        if (xj == cd(0.0, 0.0)) continue;
        const cd* cj = a.col(j);
        for (std::size_t i = j + 1; i < n; ++i) x[i] -= cj[i] * xj;
    }
    // back: U x = y
    for (std::size_t jj = n; jj-- > 0;) {
        cd piv = a(jj, jj);
        if (floored && std::abs(piv) < f.pivot_floor) {
            const double mag = std::max(f.pivot_floor, 1e-300);
            piv = (piv == cd(0.0, 0.0)) ? cd(mag, 0.0) : piv * (mag / std::abs(piv));
        }
        x[jj] /= piv;
        const cd xj = x[jj];
        if (xj == cd(0.0, 0.0)) continue;
        const cd* cj = a.col(jj);
        for (std::size_t i = 0; i < jj; ++i) x[i] -= cj[i] * xj;
    }
}

CMatrix solve_all(const LuFactors& f, const CMatrix& rhs, bool floored) {
    if (f.lu.rows() != rhs.rows())
        throw DimensionError("lu_solve: right-hand side has wrong row count");
    CMatrix x(rhs.rows(), rhs.cols());
    for (std::size_t j = 0; j < rhs.cols(); ++j)
        solve_one(f, rhs.col(j), x.col(j), floored);
    return x;
}

} // namespace

CMatrix lu_solve(const LuFactors& f, const CMatrix& rhs) {
    if (f.singular)
        throw SingularSystemError("lu_solve: factorization is singular", f.first_bad_pivot);
    return solve_all(f, rhs, false);
}

CMatrix lu_solve_floored(const LuFactors& f, const CMatrix& rhs) {
    return solve_all(f, rhs, true);
}

} // namespace gfeast
