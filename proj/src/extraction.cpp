#include "gfeast/extraction.hpp"

#include <cmath>

#include "gfeast/eig.hpp"
#include "gfeast/errors.hpp"
#include "gfeast/lu.hpp"
#include "gfeast/parallel.hpp"
#include "gfeast/qr.hpp"
#include "gfeast/rng.hpp"

namespace gfeast {

ReducedPencil oblique_reduce(const RegularPencil& p, const CMatrix& u) {
    p.validate();
    if (u.rows() != p.n())
        throw DimensionError("oblique_reduce: basis has wrong row count");
    if (u.cols() == 0 || u.cols() > u.rows())
        throw DimensionError("oblique_reduce: basis must have between 1 and n columns");

    ReducedPencil rp;
    const QrFactors f1 = qr(u);
    double dmin = std::abs(f1.R(0, 0)), dmax = dmin;
    for (std::size_t i = 1; i < f1.R.rows(); ++i) {
        const double d = std::abs(f1.R(i, i));
        dmin = std::min(dmin, d);
        dmax = std::max(dmax, d);
    }
    if (dmin <= kBasisRankTol * dmax)
        throw RankDeficientBasisError("oblique_reduce: basis lost full column rank");
    rp.U1 = f1.Q;

    const CMatrix bu1 = p.B * rp.U1;
    const QrFactors f2 = qr(bu1);
    rp.U2 = f2.Q;
    rp.R2 = f2.R;
    rp.Atil = adjoint(rp.U2) * (p.A * rp.U1);
    rp.Btil = adjoint(rp.U2) * bu1;
    return rp;
}

EigenPairSet solve_projected(const ReducedPencil& rp, std::uint64_t seed) {
    const std::size_t t = rp.Atil.rows();
    if (t == 0 || rp.Atil.cols() != t || rp.Btil.rows() != t || rp.Btil.cols() != t)
        throw DimensionError("solve_projected: reduced matrices must be square and non-empty");

    const LuFactors lub = lu_factor(rp.Btil);
    if (lub.singular)
        throw ProjectedSingularError("solve_projected: reduced right-hand matrix is singular");
    const CMatrix c = lu_solve(lub, rp.Atil);
    const std::vector<cd> vals = dense_eigenvalues(c);

    EigenPairSet pairs(t);
    parallel_for(t, [&](std::size_t i) {
        const cd lambda = vals[i];
        CMatrix m = rp.Atil;
        for (std::size_t col = 0; col < t; ++col) {
            const cd* bc = rp.Btil.col(col);
            cd* mc = m.col(col);
            for (std::size_t r = 0; r < t; ++r) mc[r] -= lambda * bc[r];
        }
        const LuFactors f = lu_factor(m);

        Rng rng(seed + 0x9e3779b97f4a7c15ull * (i + 1));
        CMatrix y(t, 1);
        for (std::size_t r = 0; r < t; ++r) y(r, 0) = rng.cnormal();
        for (int step = 0; step < 2; ++step) {
            y = lu_solve_floored(f, y);
            const double nrm = frobenius_norm(y);
            if (nrm == 0.0) break;
            for (auto& v : y.data()) v /= nrm;
        }

        EigenPair pr;
        pr.lambda = lambda;
        pr.y.assign(y.data().begin(), y.data().end());
        pairs[i] = std::move(pr);
    });
    return pairs;
}

double residual(const RegularPencil& p, cd lambda, const std::vector<cd>& x) {
    p.validate();
    if (x.size() != p.n())
        throw DimensionError("residual: vector has wrong length");
    if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
        throw ParameterError("residual: eigenvalue must be finite");

    const std::vector<cd> ax = mat_vec(p.A, x);
    const std::vector<cd> bx = mat_vec(p.B, x);
    double num = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) num += std::norm(ax[i] - lambda * bx[i]);
    const double den = norm2(ax) + norm2(bx);
    if (den == 0.0)
        throw ResidualUndefinedError("residual: both A x and B x vanish");
    return std::sqrt(num) / den;
}

void complete_pairs(const RegularPencil& p, const CMatrix& u1, EigenPairSet& pairs) {
    parallel_for(pairs.size(), [&](std::size_t i) {
        EigenPair& pr = pairs[i];
        if (pr.y.size() != u1.cols())
            throw DimensionError("complete_pairs: reduced vector length mismatch");
        std::vector<cd> x = mat_vec(u1, pr.y);
        const double nrm = norm2(x);
        if (nrm > 0.0)
            for (cd& v : x) v /= nrm;
        pr.x = std::move(x);
        pr.residual = residual(p, pr.lambda, pr.x);
    });
}

FilterResult filter_inside(const Contour& c, EigenPairSet& pairs, double eta) {
    if (!(eta > 0.0))
        throw ParameterError("filter_inside: residual threshold must be positive");
    if (!(c.radius > 0.0))
        throw ParameterError("filter_inside: radius must be positive");

    FilterResult out;
    for (EigenPair& pr : pairs) {
        if (pr.residual < 0.0)
            throw ParameterError("filter_inside: residuals must be populated first");
        const double dist = std::abs(pr.lambda - c.center);
        pr.inside = dist < c.radius;
        pr.boundary = std::abs(dist - c.radius) <= kBoundaryRelTol * c.radius;
        if (pr.inside && pr.residual < eta) out.kept.push_back(pr);
    }
    out.count = static_cast<int>(out.kept.size());
    if (out.count > 0) {
        double worst = 0.0;
        for (const EigenPair& pr : out.kept) worst = std::max(worst, pr.residual);
        out.err = worst;
    }
    return out;
}

} // namespace gfeast
