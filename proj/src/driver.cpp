#include "gfeast/driver.hpp"

#include <chrono>
#include <cmath>

#include "gfeast/errors.hpp"
#include "gfeast/qr.hpp"

namespace gfeast {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<PairSnapshot> snapshot(const EigenPairSet& pairs) {
    std::vector<PairSnapshot> out;
    out.reserve(pairs.size());
    for (const EigenPair& pr : pairs)
        out.push_back({pr.lambda, pr.residual, pr.inside});
    return out;
}

void note_boundary_pairs(GfeastReport& rep, const EigenPairSet& pairs) {
    for (std::size_t i = 0; i < pairs.size(); ++i)
        if (pairs[i].boundary)
            rep.notes.push_back("candidate eigenvalue " + std::to_string(i) +
                                " sits on the contour to within 1e-12 relative; "
                                "counts near it are unreliable");
}

void validate_options(const GfeastOptions& opts, GfeastReport& rep) {
    if (opts.q < 1) throw ParameterError("gfeast: need at least one quadrature node");
    if (opts.p < 1) throw ParameterError("gfeast: probe block size must be positive");
    if (!(opts.alpha > 1.0)) throw ParameterError("gfeast: growth factor must exceed 1");
    if (!(opts.eta > 0.0)) throw ParameterError("gfeast: eta must be positive");
    if (!(opts.eps > 0.0)) throw ParameterError("gfeast: eps must be positive");
    if (opts.max_iter < 1) throw ParameterError("gfeast: need at least one iteration");
    if (opts.eps > opts.eta)
        rep.notes.push_back("eps exceeds eta: pairs may converge past the keep threshold "
                            "before they are ever kept");
}

} // namespace

GfeastReport gfeast(const RegularPencil& p, const Contour& c, const GfeastOptions& opts) {
    const auto t_start = std::chrono::steady_clock::now();
    GfeastReport rep;
    validate_options(opts, rep);
    p.validate();

    const ContourRule rule = circle_rule(c, gauss_legendre(opts.q));

    auto t0 = std::chrono::steady_clock::now();
    const ShiftedFactorSet fs = shifted_factorizations(p, rule);
    rep.timings.factor_s = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    SearchOptions sopts;
    sopts.p = opts.p;
    sopts.alpha = opts.alpha;
    sopts.rrqr_tol = opts.rrqr_tol;
    sopts.seed = opts.seed;
    const SearchResult sr = search_upper_bound(p, fs, sopts);
    rep.timings.search_s = seconds_since(t0);

    rep.t_used = sr.t;
    rep.s0 = sr.s0;
    rep.search_rounds = sr.rounds;
    rep.rank_warning = sr.rank_warning;
    if (sr.rank_warning)
        rep.notes.push_back("search basis filled the whole space; the upper bound "
                            "equals the problem size");

    if (sr.t == 0) {
        rep.flag = 1;
        rep.err = 0.0;
        rep.s_detected = 0;
        rep.notes.push_back("projected probe block vanished: no spectrum inside the circle");
        rep.timings.total_s = seconds_since(t_start);
        return rep;
    }

    CMatrix u1 = sr.U1;
    EigenPairSet prev_kept;
    int c_prev = 0;
    std::optional<double> e_prev;

    t0 = std::chrono::steady_clock::now();
    for (std::size_t k = 1; k <= opts.max_iter; ++k) {
        const ReducedPencil rp = oblique_reduce(p, u1);
        EigenPairSet pairs = solve_projected(rp, opts.seed + 0x51ed2700dull * k);
        complete_pairs(p, rp.U1, pairs);
        const FilterResult fr = filter_inside(c, pairs, opts.eta);

        IterationRecord rec;
        rec.k = static_cast<int>(k);
        rec.c_k = fr.count;
        rec.e_k = fr.err;
        rec.pairs = snapshot(pairs);
        rep.history.push_back(std::move(rec));

        if (fr.count > 0 && fr.count == c_prev) {
            if (rep.s_detected < 0) rep.s_detected = fr.count;
            const double e_k = *fr.err;
            if (e_k < opts.eps) {
                rep.flag = 1;
                rep.err = e_k;
                rep.pairs = fr.kept;
                note_boundary_pairs(rep, pairs);
                rep.timings.iterate_s = seconds_since(t0);
                rep.timings.total_s = seconds_since(t_start);
                return rep;
            }
            const double e_before = e_prev.value();
            if (e_k >= e_before) {
                rep.flag = 0;
                rep.err = e_before;
                rep.pairs = prev_kept;
                rep.notes.push_back(
                    e_k > e_before
                        ? "worst residual increased at iteration " + std::to_string(k) +
                              "; reporting the previous iterate"
                        : "worst residual stagnated at iteration " + std::to_string(k) +
                              "; reporting the previous iterate");
                note_boundary_pairs(rep, pairs);
                rep.timings.iterate_s = seconds_since(t0);
                rep.timings.total_s = seconds_since(t_start);
                return rep;
            }
        }

        if (k == opts.max_iter) {
            rep.flag = -1;
            rep.err = fr.err.value_or(0.0);
            rep.pairs = fr.kept;
            if (fr.count == 0)
                rep.notes.push_back("no pair passed the keep filter within the "
                                    "iteration budget");
            else
                rep.notes.push_back("iteration budget exhausted before the worst "
                                    "residual reached eps");
            note_boundary_pairs(rep, pairs);
            break;
        }

        // Refresh: re-project the basis and orthonormalize.  The projected
        // block may legitimately lose rank here; plain QR keeps the column
        // count and stays orthonormal.
        const CMatrix refreshed = apply_projector(fs, p, u1);
        u1 = qr(refreshed).Q;

        prev_kept = fr.kept;
        c_prev = fr.count;
        if (fr.count > 0) e_prev = fr.err;
    }

    rep.timings.iterate_s = seconds_since(t0);
    rep.timings.total_s = seconds_since(t_start);
    return rep;
}

} // namespace gfeast
