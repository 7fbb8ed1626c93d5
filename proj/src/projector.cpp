#include "gfeast/projector.hpp"

#include <string>

#include "gfeast/errors.hpp"
#include "gfeast/parallel.hpp"

namespace gfeast {

void RegularPencil::validate() const {
    if (A.rows() != A.cols() || B.rows() != B.cols())
        throw DimensionError("pencil matrices must be square");
    if (A.rows() != B.rows())
        throw DimensionError("pencil matrices must have the same size");
    if (A.rows() == 0)
        throw DimensionError("pencil matrices must be non-empty");
}

ShiftedFactorSet shifted_factorizations(const RegularPencil& p, const ContourRule& rule) {
    p.validate();
    const std::size_t q = rule.z.size();
    if (q == 0)
        throw ParameterError("shifted_factorizations: empty quadrature rule");

    ShiftedFactorSet fs;
    fs.rule = rule;
    fs.factors.resize(q);

    const std::size_t n = p.n();
    parallel_for(q, [&](std::size_t j) {
        CMatrix m(n, n);
        const cd z = rule.z[j];
        for (std::size_t col = 0; col < n; ++col) {
            const cd* bc = p.B.col(col);
            const cd* ac = p.A.col(col);
            cd* mc = m.col(col);
            for (std::size_t i = 0; i < n; ++i) mc[i] = z * bc[i] - ac[i];
        }
        fs.factors[j] = lu_factor(m);
    });

    std::vector<int> bad;
    for (std::size_t j = 0; j < q; ++j)
        if (fs.factors[j].singular) bad.push_back(static_cast<int>(j));
    if (!bad.empty())
        throw ContourSpectrumError(
            "contour node(s) hit the spectrum: " + std::to_string(bad.size()) +
                " shifted matrices are singular; move the circle or change its radius",
            bad);
    return fs;
}

CMatrix apply_projector(const ShiftedFactorSet& fs, const RegularPencil& p, const CMatrix& y) {
    p.validate();
    if (y.rows() != p.n())
        throw DimensionError("apply_projector: block has wrong row count");
    if (y.cols() == 0)
        throw DimensionError("apply_projector: block has no columns");

    const CMatrix x = p.B * y;
    const std::size_t q = fs.factors.size();
    std::vector<CMatrix> parts(q);
    parallel_for(q, [&](std::size_t j) { parts[j] = lu_solve(fs.factors[j], x); });

    CMatrix out(y.rows(), y.cols());
    for (std::size_t j = 0; j < q; ++j) {
        const cd w = fs.rule.w[j];
        const auto& part = parts[j].data();
        auto& acc = out.data();
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * part[i];
    }
    return out;
}

MomentBlock apply_moments(const ShiftedFactorSet& fs, const CMatrix& y, std::size_t g) {
    if (g < 1)
        throw ParameterError("apply_moments: need at least one moment");
    if (y.cols() == 0 || y.rows() == 0)
        throw DimensionError("apply_moments: block is empty");
    const std::size_t q = fs.factors.size();
    if (q == 0)
        throw ParameterError("apply_moments: empty factor set");
    if (y.rows() != fs.factors[0].lu.rows())
        throw DimensionError("apply_moments: block has wrong row count");

    std::vector<CMatrix> solves(q);
    parallel_for(q, [&](std::size_t j) { solves[j] = lu_solve(fs.factors[j], y); });

    MomentBlock mb;
    mb.blocks.reserve(g);
    for (std::size_t i = 0; i < g; ++i) {
        CMatrix acc(y.rows(), y.cols());
        for (std::size_t j = 0; j < q; ++j) {
            cd zi(1.0, 0.0);
            for (std::size_t e = 0; e < i; ++e) zi *= fs.rule.z[j];
            const cd w = fs.rule.w[j] * zi;
            const auto& part = solves[j].data();
            auto& a = acc.data();
            for (std::size_t t = 0; t < a.size(); ++t) a[t] += w * part[t];
        }
        mb.blocks.push_back(std::move(acc));
    }
    return mb;
}

} // namespace gfeast
