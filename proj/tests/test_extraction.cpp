#include <doctest.h>

#include <cmath>
#include <vector>

#include "gfeast/errors.hpp"
#include "gfeast/extraction.hpp"
#include "test_support.hpp"

using namespace gfeast;
using gfeast_test::diag_pencil;
using gfeast_test::multiset_distance;
using gfeast_test::parallelism_defect;
using gfeast_test::reversal_pencil;

namespace {

CMatrix first_unit_cols(std::size_t n, std::size_t k) {
    CMatrix u(n, k);
    for (std::size_t j = 0; j < k; ++j) u(j, j) = 1.0;
    return u;
}

} // namespace

TEST_CASE("oblique reduction produces orthonormal bases and a triangular right side") {
    const RegularPencil p = reversal_pencil();
    const ReducedPencil rp = oblique_reduce(p, first_unit_cols(4, 2));

    const CMatrix g1 = adjoint(rp.U1) * rp.U1;
    const CMatrix g2 = adjoint(rp.U2) * rp.U2;
    CHECK(gfeast_test::max_entry_diff(g1, CMatrix::identity(2)) < 1e-14);
    CHECK(gfeast_test::max_entry_diff(g2, CMatrix::identity(2)) < 1e-14);

    CHECK(gfeast_test::max_entry_diff(rp.Btil, rp.R2) < 1e-14);
    CHECK(std::abs(rp.Btil(1, 0)) < 1e-15);

    const CMatrix atil_ref = adjoint(rp.U2) * (p.A * rp.U1);
    CHECK(gfeast_test::max_entry_diff(rp.Atil, atil_ref) < 1e-14);
}

TEST_CASE("rank-collapsed basis is rejected") {
    const RegularPencil p = reversal_pencil();
    CMatrix u(4, 2);
    u(0, 0) = 1.0;
    u(0, 1) = 1.0;
    u(1, 1) = 1e-14;
    CHECK_THROWS_AS(oblique_reduce(p, u), RankDeficientBasisError);
    CHECK_THROWS_AS(oblique_reduce(p, CMatrix(4, 0)), DimensionError);
}

TEST_CASE("projected solve recovers the eigenvalues carried by the basis") {
    const RegularPencil p = reversal_pencil();
    const ReducedPencil rp = oblique_reduce(p, first_unit_cols(4, 2));
    EigenPairSet pairs = solve_projected(rp);
    REQUIRE(pairs.size() == 2);
    std::vector<cd> lams{pairs[0].lambda, pairs[1].lambda};
    CHECK(multiset_distance(lams, {cd(0.2, 0), cd(0.5, 0)}) < 1e-13);
}

TEST_CASE("singular reduced right side is reported") {
    ReducedPencil rp;
    rp.U1 = CMatrix::identity(2);
    rp.U2 = CMatrix::identity(2);
    rp.Atil = CMatrix::identity(2);
    rp.Btil = CMatrix(2, 2);
    rp.Btil(0, 0) = 1.0;
    rp.R2 = rp.Btil;
    CHECK_THROWS_AS(solve_projected(rp), ProjectedSingularError);
}

TEST_CASE("completed pairs carry unit vectors and small residuals") {
    const RegularPencil p = reversal_pencil();
    const ReducedPencil rp = oblique_reduce(p, first_unit_cols(4, 2));
    EigenPairSet pairs = solve_projected(rp);
    complete_pairs(p, rp.U1, pairs);
    for (const EigenPair& ep : pairs) {
        REQUIRE(ep.x.size() == 4);
        CHECK(std::abs(norm2(ep.x) - 1.0) < 1e-14);
        CHECK(ep.residual >= 0.0);
        CHECK(ep.residual < 1e-14);
    }
    // Eigenvalue 0.2 belongs to e_1, eigenvalue 0.5 to e_2.
    for (const EigenPair& ep : pairs) {
        const std::size_t slot = std::abs(ep.lambda - cd(0.2, 0)) < 0.1 ? 0 : 1;
        std::vector<cd> e(4);
        e[slot] = 1.0;
        CHECK(parallelism_defect(ep.x, e) < 1e-12);
    }
}

TEST_CASE("residual definition and guards") {
    const RegularPencil p = diag_pencil({cd(2, 0), cd(5, 0)});
    std::vector<cd> x{cd(1, 0), cd(0, 0)};
    // Exact pair: residual at rounding level.
    CHECK(residual(p, cd(2, 0), x) < 1e-15);
    // Scale invariance in x.
    std::vector<cd> x2{cd(0.5, 0.25), cd(-1, 3)};
    const std::vector<cd> x2s{cd(1.5, 0.75), cd(-3, 9)};
    CHECK(residual(p, cd(1.7, 0.4), x2)
          == doctest::Approx(residual(p, cd(1.7, 0.4), x2s)).epsilon(1e-14));
    // Known value: A x - lambda B x = (2 - 1) e_1, |A x| = 2, |B x| = 1.
    CHECK(residual(p, cd(1, 0), x) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    CHECK_THROWS_AS(residual(p, cd(std::nan(""), 0), x), ParameterError);
    RegularPencil z;
    z.A = CMatrix(2, 2);
    z.B = CMatrix(2, 2);
    CHECK_THROWS_AS(residual(z, cd(1, 0), x), ResidualUndefinedError);
}

TEST_CASE("inside filter keeps only converged pairs strictly inside the circle") {
    const Contour c{cd(0, 0), 1.0};
    EigenPairSet pairs(4);
    pairs[0].lambda = cd(0.5, 0);
    pairs[0].residual = 1e-5;
    pairs[1].lambda = cd(2.0, 0);
    pairs[1].residual = 1e-9;
    pairs[2].lambda = cd(0.3, 0);
    pairs[2].residual = 0.5;
    pairs[3].lambda = cd(1.0, 0); // exactly on the circle
    pairs[3].residual = 1e-9;
    for (auto& ep : pairs) ep.x = {cd(1, 0)};

    const FilterResult fr = filter_inside(c, pairs, 1e-3);
    REQUIRE(fr.count == 1);
    CHECK(std::abs(fr.kept[0].lambda - cd(0.5, 0)) == 0.0);
    REQUIRE(fr.err.has_value());
    CHECK(*fr.err == 1e-5);

    CHECK(pairs[0].inside);
    CHECK(pairs[2].inside);
    CHECK_FALSE(pairs[1].inside);
    CHECK_FALSE(pairs[3].inside);
    CHECK(pairs[3].boundary);
    CHECK_FALSE(pairs[0].boundary);
}

TEST_CASE("filter treats residual equal to the tolerance as not converged") {
    const Contour c{cd(0, 0), 1.0};
    EigenPairSet pairs(1);
    pairs[0].lambda = cd(0.1, 0);
    pairs[0].residual = 1e-3;
    const FilterResult fr = filter_inside(c, pairs, 1e-3);
    CHECK(fr.count == 0);
    CHECK_FALSE(fr.err.has_value());
}

TEST_CASE("filter flags near-boundary pairs on both sides") {
    const Contour c{cd(0, 0), 2.0};
    EigenPairSet pairs(2);
    pairs[0].lambda = cd(2.0 * (1.0 - 1e-13), 0);
    pairs[0].residual = 1e-9;
    pairs[1].lambda = cd(0, -2.0 * (1.0 + 1e-13));
    pairs[1].residual = 1e-9;
    filter_inside(c, pairs, 1e-3);
    CHECK(pairs[0].boundary);
    CHECK(pairs[1].boundary);
    CHECK(pairs[0].inside);
    CHECK_FALSE(pairs[1].inside);
}

TEST_CASE("filter validates its inputs") {
    const Contour c{cd(0, 0), 1.0};
    EigenPairSet pairs(1);
    pairs[0].lambda = cd(0.5, 0);
    CHECK_THROWS_AS(filter_inside(c, pairs, 1e-3), ParameterError); // residual unset
    pairs[0].residual = 1e-8;
    CHECK_THROWS_AS(filter_inside(c, pairs, 0.0), ParameterError);
    CHECK_THROWS_AS(filter_inside(Contour{cd(0, 0), 0.0}, pairs, 1e-3), ParameterError);
}
