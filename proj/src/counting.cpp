#include "gfeast/counting.hpp"

#include <algorithm>
#include <cmath>

#include "gfeast/errors.hpp"
#include "gfeast/rng.hpp"

namespace gfeast {

double estimate_count(const CMatrix& y, const CMatrix& u) {
    if (y.rows() != u.rows() || y.cols() != u.cols())
        throw DimensionError("estimate_count: probe and projection shapes differ");
    if (y.cols() == 0)
        throw DimensionError("estimate_count: empty probe block");
    double tr = 0.0;
    for (std::size_t j = 0; j < y.cols(); ++j) {
        const cd* yc = y.col(j);
        const cd* uc = u.col(j);
        for (std::size_t i = 0; i < y.rows(); ++i)
            tr += (std::conj(yc[i]) * uc[i]).real();
    }
    return tr / static_cast<double>(y.cols());
}

SearchResult search_upper_bound(const RegularPencil& p, const ShiftedFactorSet& fs,
                                const SearchOptions& opts) {
    p.validate();
    if (opts.p < 1)
        throw ParameterError("search: probe block size must be positive");
    if (!(opts.alpha > 1.0))
        throw ParameterError("search: growth factor must exceed 1");

    const std::size_t n = p.n();
    const std::size_t p_eff = std::min<std::size_t>(opts.p, n);
    Rng rng(opts.seed);

    SearchResult res;
    const CMatrix y0 = rng.normal_matrix(n, p_eff);
    CMatrix u = apply_projector(fs, p, y0);
    res.s0 = estimate_count(y0, u);

    if (frobenius_norm(u) <= kEmptySpectrumFloor * frobenius_norm(y0)) {
        res.t = 0;
        return res;
    }

    const long s0_ceil = static_cast<long>(std::ceil(res.s0));
    std::size_t s_dag = std::min<std::size_t>(
        std::max<std::size_t>(p_eff, s0_ceil > 0 ? static_cast<std::size_t>(s0_ceil) : 0), n);
    if (s_dag > p_eff) {
        const CMatrix yt = rng.normal_matrix(n, s_dag - p_eff);
        u = hcat(u, apply_projector(fs, p, yt));
    }

    for (;;) {
        ++res.rounds;
        res.s_dagger_history.push_back(static_cast<int>(s_dag));
        const QrFactors f = rrqr(u, opts.rrqr_tol);
        const std::size_t t = static_cast<std::size_t>(f.rank);
        if (t < s_dag || t >= n) {
            res.t = static_cast<int>(t);
            res.U1 = take_cols(f.Q, 0, t);
            res.rank_warning = (t >= n);
            return res;
        }
        // Rank filled the whole block: grow and retry.
        u = take_cols(f.Q, 0, t);
        s_dag = std::min<std::size_t>(
            static_cast<std::size_t>(std::ceil(opts.alpha * static_cast<double>(t))), n);
        const CMatrix yt = rng.normal_matrix(n, s_dag - t);
        u = hcat(u, apply_projector(fs, p, yt));
    }
}

} // namespace gfeast
