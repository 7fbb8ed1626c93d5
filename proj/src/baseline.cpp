#include "gfeast/baseline.hpp"

#include <chrono>

#include "gfeast/errors.hpp"
#include "gfeast/lu.hpp"
#include "gfeast/qr.hpp"
#include "gfeast/rng.hpp"

namespace gfeast {

namespace {

EigenPairSet extract_galerkin(const RegularPencil& p, const Contour& c, const CMatrix& u,
                              double eta, std::uint64_t seed, FilterResult& fr) {
    ReducedPencil rp;
    rp.U1 = u;
    rp.U2 = u;
    rp.Atil = adjoint(u) * (p.A * u);
    rp.Btil = adjoint(u) * (p.B * u);
    EigenPairSet pairs = solve_projected(rp, seed);
    complete_pairs(p, u, pairs);
    fr = filter_inside(c, pairs, eta);
    return pairs;
}

} // namespace

GfeastReport block_cirr(const RegularPencil& p, const Contour& c, const CirrOptions& opts) {
    const auto t_start = std::chrono::steady_clock::now();
    p.validate();
    if (opts.h < 1) throw ParameterError("block_cirr: need at least one probe column");
    if (opts.g < 1) throw ParameterError("block_cirr: need at least one moment");
    if (opts.max_rounds < 1) throw ParameterError("block_cirr: need at least one round");
    if (!(opts.eta > 0.0)) throw ParameterError("block_cirr: eta must be positive");
    if (!(opts.eps > 0.0)) throw ParameterError("block_cirr: eps must be positive");

    GfeastReport rep;
    const ContourRule rule = circle_rule(c, gauss_legendre(opts.q));
    const ShiftedFactorSet fs = shifted_factorizations(p, rule);

    Rng rng(opts.seed);
    const CMatrix y = rng.cnormal_matrix(p.n(), opts.h);
    const MomentBlock mb = apply_moments(fs, y, opts.g);
    CMatrix m = mb.blocks[0];
    for (std::size_t i = 1; i < mb.blocks.size(); ++i) m = hcat(m, mb.blocks[i]);

    QrFactors qf = rrqr(m, opts.rrqr_tol);
    rep.t_used = qf.rank;
    if (qf.rank == 0) {
        rep.flag = -1;
        rep.notes.push_back("moment block vanished: nothing to extract");
        rep.timings.total_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
        return rep;
    }
    CMatrix u = take_cols(qf.Q, 0, static_cast<std::size_t>(qf.rank));

    EigenPairSet prev_kept;
    int c_prev = 0;
    std::optional<double> e_prev;

    for (std::size_t k = 1; k <= opts.max_rounds; ++k) {
        FilterResult fr;
        EigenPairSet pairs =
            extract_galerkin(p, c, u, opts.eta, opts.seed + 0xc1221ull * k, fr);

        IterationRecord rec;
        rec.k = static_cast<int>(k);
        rec.c_k = fr.count;
        rec.e_k = fr.err;
        for (const EigenPair& pr : pairs) rec.pairs.push_back({pr.lambda, pr.residual, pr.inside});
        rep.history.push_back(std::move(rec));

        if (fr.count > 0 && fr.count == c_prev) {
            if (rep.s_detected < 0) rep.s_detected = fr.count;
            const double e_k = *fr.err;
            if (e_k < opts.eps) {
                rep.flag = 1;
                rep.err = e_k;
                rep.pairs = fr.kept;
                break;
            }
            if (e_k >= e_prev.value()) {
                rep.flag = 0;
                rep.err = *e_prev;
                rep.pairs = prev_kept;
                rep.notes.push_back("worst residual stopped improving at round " +
                                    std::to_string(k) + "; reporting the previous round");
                break;
            }
        }

        if (k == opts.max_rounds) {
            rep.flag = -1;
            rep.err = fr.err.value_or(0.0);
            rep.pairs = fr.kept;
            break;
        }

        if (fr.count == 0) {
            rep.flag = -1;
            rep.err = 0.0;
            rep.pairs = {};
            rep.notes.push_back("no kept pairs to refine at round " + std::to_string(k));
            break;
        }

        // Refinement: re-project the kept vectors and orthonormalize.
        CMatrix x(p.n(), fr.kept.size());
        for (std::size_t j = 0; j < fr.kept.size(); ++j)
            for (std::size_t i = 0; i < p.n(); ++i) x(i, j) = fr.kept[j].x[i];
        const CMatrix w = apply_projector(fs, p, x);
        QrFactors qf2 = rrqr(w, opts.rrqr_tol);
        u = take_cols(qf2.Q, 0, static_cast<std::size_t>(qf2.rank));

        prev_kept = fr.kept;
        c_prev = fr.count;
        e_prev = fr.err;
    }

    rep.timings.total_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return rep;
}

GalerkinResult galerkin_step(const RegularPencil& p, const ShiftedFactorSet& fs,
                             const CMatrix& y) {
    p.validate();
    GalerkinResult out;
    out.W = apply_projector(fs, p, y);
    out.Ahat = adjoint(out.W) * (p.A * out.W);
    out.Bhat = adjoint(out.W) * (p.B * out.W);

    const LuFactors lub = lu_factor(out.Bhat);
    if (lub.singular) return out;

    ReducedPencil rp;
    rp.U1 = out.W;
    rp.U2 = out.W;
    rp.Atil = out.Ahat;
    rp.Btil = out.Bhat;
    out.pairs = solve_projected(rp);
    complete_pairs(p, out.W, out.pairs);
    out.solved = true;
    return out;
}

} // namespace gfeast
