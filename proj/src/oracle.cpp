#include "gfeast/oracle.hpp"

#include <cmath>

#include "gfeast/errors.hpp"
#include "gfeast/lu.hpp"
#include "gfeast/qr.hpp"
#include "gfeast/rng.hpp"

namespace gfeast {

namespace {

CMatrix inverse(const CMatrix& m) {
    const LuFactors f = lu_factor(m);
    if (f.singular)
        throw SingularSystemError("matrix inverse: singular input", f.first_bad_pivot);
    return lu_solve(f, CMatrix::identity(m.rows()));
}

} // namespace

OracleEigs oracle_pencil_eigs(const RegularPencil& p, std::uint64_t seed) {
    p.validate();
    const std::size_t n = p.n();
    Rng rng(seed);

    const double anorm = frobenius_norm(p.A);
    const double bnorm = frobenius_norm(p.B);
    const double scale = (bnorm > 0.0) ? std::max(1.0, anorm / bnorm) : 1.0;

    LuFactors shifted;
    cd sigma;
    bool ok = false;
    for (int attempt = 0; attempt < 32; ++attempt) {
        sigma = scale * rng.cnormal();
        CMatrix m = p.A;
        for (std::size_t j = 0; j < n; ++j) {
            const cd* bc = p.B.col(j);
            cd* mc = m.col(j);
            for (std::size_t i = 0; i < n; ++i) mc[i] -= sigma * bc[i];
        }
        shifted = lu_factor(m);
        if (!shifted.singular) { ok = true; break; }
    }
    if (!ok)
        throw ParameterError("oracle: could not find a nonsingular shift; "
                             "the pencil looks singular");

    const CMatrix minv_b = lu_solve(shifted, p.B);
    const DenseEigs de = dense_eigs(minv_b, seed + 1);

    double mu_max = 0.0;
    for (const cd& mu : de.values) mu_max = std::max(mu_max, std::abs(mu));

    OracleEigs out;
    std::vector<std::size_t> finite_idx;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(de.values[i]) > kInfiniteEigTol * mu_max) {
            out.finite.push_back(sigma + 1.0 / de.values[i]);
            finite_idx.push_back(i);
        } else {
            ++out.infinite_count;
        }
    }
    out.vectors = CMatrix(n, finite_idx.size());
    for (std::size_t j = 0; j < finite_idx.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = de.vectors(i, finite_idx[j]);
    return out;
}

FixtureTruth weierstrass_fixture(const WeierstrassSpec& spec, const Contour& contour) {
    if (!(contour.radius > 0.0))
        throw ParameterError("fixture: radius must be positive");
    if (!(spec.cond >= 1.0))
        throw ParameterError("fixture: condition target must be at least 1");
    if (spec.jordan.empty() && spec.nilpotent_blocks.empty())
        throw ParameterError("fixture: empty block structure");

    std::size_t d = 0;
    for (const auto& [lambda, size] : spec.jordan) {
        (void)lambda;
        if (size < 1) throw ParameterError("fixture: zero-sized block");
        d += size;
    }
    std::size_t n = d;
    for (std::size_t size : spec.nilpotent_blocks) {
        if (size < 1) throw ParameterError("fixture: zero-sized block");
        n += size;
    }

    for (const auto& [lambda, size] : spec.jordan) {
        (void)size;
        const double dist = std::abs(lambda - contour.center);
        if (std::abs(dist - contour.radius) <= kFixtureBoundaryGuard * contour.radius)
            throw ParameterError("fixture: eigenvalue too close to the circle");
    }

    // Canonical matrices diag(J, I) and diag(I, N).
    CMatrix ma(n, n), mb(n, n);
    std::size_t pos = 0;
    for (const auto& [lambda, size] : spec.jordan) {
        for (std::size_t i = 0; i < size; ++i) {
            ma(pos + i, pos + i) = lambda;
            if (i + 1 < size) ma(pos + i, pos + i + 1) = 1.0;
            mb(pos + i, pos + i) = 1.0;
        }
        pos += size;
    }
    for (std::size_t size : spec.nilpotent_blocks) {
        for (std::size_t i = 0; i < size; ++i) {
            ma(pos + i, pos + i) = 1.0;
            if (i + 1 < size) mb(pos + i, pos + i + 1) = 1.0;
        }
        pos += size;
    }

    // Random transformations with prescribed condition number: unitary x
    // log-spaced diagonal x unitary.
    Rng rng(spec.seed);
    auto make_transform = [&]() {
        const CMatrix q1 = qr(rng.cnormal_matrix(n, n)).Q;
        const CMatrix q2 = qr(rng.cnormal_matrix(n, n)).Q;
        CMatrix dmat(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            const double e = (n > 1) ? static_cast<double>(i) / (n - 1) : 0.0;
            dmat(i, i) = std::pow(spec.cond, e);
        }
        return q1 * dmat * q2;
    };

    FixtureTruth ft;
    ft.contour = contour;
    ft.T = make_transform();
    ft.S = make_transform();

    const CMatrix t_inv = inverse(ft.T);
    const CMatrix s_inv = inverse(ft.S);
    ft.pencil.A = t_inv * ma * s_inv;
    ft.pencil.B = t_inv * mb * s_inv;

    // Ground truth.
    CMatrix selector(n, n);
    std::vector<std::size_t> lead_slots;
    pos = 0;
    for (const auto& [lambda, size] : spec.jordan) {
        const bool in = std::abs(lambda - contour.center) < contour.radius;
        for (std::size_t i = 0; i < size; ++i) {
            if (in) {
                ft.inside.push_back(lambda);
                selector(pos + i, pos + i) = 1.0;
            } else {
                ft.outside.push_back(lambda);
            }
        }
        if (in) {
            lead_slots.push_back(pos);
            ft.inside_block_sizes.push_back(size);
        }
        pos += size;
    }
    for (std::size_t size : spec.nilpotent_blocks) ft.infinite_count += size;
    ft.s = static_cast<int>(ft.inside.size());

    ft.exact_projector = ft.S * selector * s_inv;
    ft.inside_vectors = CMatrix(n, lead_slots.size());
    for (std::size_t j = 0; j < lead_slots.size(); ++j) {
        std::vector<cd> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = ft.S(i, lead_slots[j]);
        const double nrm = norm2(v);
        for (std::size_t i = 0; i < n; ++i) ft.inside_vectors(i, j) = v[i] / nrm;
    }
    return ft;
}

} // namespace gfeast
