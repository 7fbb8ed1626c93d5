#include <doctest.h>

#include <cmath>

#include "gfeast/counting.hpp"
#include "gfeast/errors.hpp"
#include "gfeast/oracle.hpp"
#include "gfeast/rng.hpp"
#include "test_support.hpp"

using namespace gfeast;
using gfeast_test::diag_pencil;
using gfeast_test::parallelism_defect;
using gfeast_test::reversal_pencil;

namespace {

ShiftedFactorSet factors_for(const RegularPencil& p, const Contour& c, std::size_t q = 16) {
    return shifted_factorizations(p, circle_rule(c, gauss_legendre(q)));
}

} // namespace

TEST_CASE("count estimate validates shapes") {
    CHECK_THROWS_AS(estimate_count(CMatrix(3, 2), CMatrix(3, 3)), DimensionError);
    CHECK_THROWS_AS(estimate_count(CMatrix(2, 2), CMatrix(3, 2)), DimensionError);
}

TEST_CASE("count estimate is the normalized trace") {
    CMatrix y = CMatrix::identity(2);
    CMatrix u(2, 2);
    u(0, 0) = cd(1.0, 0.5);
    u(1, 1) = cd(0.25, -3.0);
    CHECK(estimate_count(y, u) == doctest::Approx(0.625).epsilon(1e-14));
}

TEST_CASE("search on a one-inside diagonal pencil certifies t = 1") {
    const RegularPencil p = diag_pencil({cd(0.3, 0), cd(50.0, 0)});
    const ShiftedFactorSet fs = factors_for(p, Contour{cd(0, 0), 1.0});
    SearchOptions opts;
    opts.p = 2;
    const SearchResult sr = search_upper_bound(p, fs, opts);
    CHECK(sr.t == 1);
    CHECK(sr.rounds >= 1);
    CHECK_FALSE(sr.rank_warning);
    REQUIRE(sr.U1.cols() == 1);
    // The surviving direction is the inside eigenvector e_1.
    std::vector<cd> u(2), e1{cd(1, 0), cd(0, 0)};
    u[0] = sr.U1(0, 0);
    u[1] = sr.U1(1, 0);
    CHECK(parallelism_defect(u, e1) < 1e-8);
}

TEST_CASE("search reports an empty circle without any rank rounds") {
    const RegularPencil p = diag_pencil({cd(3, 0), cd(4, 0)});
    const ShiftedFactorSet fs = factors_for(p, Contour{cd(0, 0), 1.0});
    SearchOptions opts;
    opts.p = 2;
    const SearchResult sr = search_upper_bound(p, fs, opts);
    CHECK(sr.t == 0);
    CHECK(sr.rounds == 0);
    CHECK(sr.U1.cols() == 0);
    CHECK_FALSE(sr.rank_warning);
    CHECK(std::abs(sr.s0) < 0.5);
}

TEST_CASE("search certifies the exact count on a well-separated scrambled pencil") {
    WeierstrassSpec spec;
    spec.cond = 10.0;
    spec.seed = 31;
    for (int i = 0; i < 5; ++i)
        spec.jordan.push_back({cd(0.1 * (i + 1), 0.05 * (i - 2)), 1});
    for (int i = 0; i < 35; ++i)
        spec.jordan.push_back({cd(30.0 + 2.0 * i, 10.0 - i), 1});
    const Contour c{cd(0, 0), 1.0};
    const FixtureTruth ft = weierstrass_fixture(spec, c);
    REQUIRE(ft.s == 5);

    const ShiftedFactorSet fs = factors_for(ft.pencil, c);
    const SearchResult sr = search_upper_bound(ft.pencil, fs, SearchOptions{});
    CHECK(sr.t == 5);
    CHECK(sr.rounds == 1);
    CHECK(std::abs(sr.s0 - 5.0) < 2.0);
    CHECK(sr.U1.cols() == 5);
    CHECK_FALSE(sr.rank_warning);
}

TEST_CASE("search grows the block when the probe count starts too small") {
    WeierstrassSpec spec;
    spec.cond = 10.0;
    spec.seed = 47;
    for (int i = 0; i < 12; ++i)
        spec.jordan.push_back({cd(0.05 * (i + 1), 0.6 - 0.1 * i), 1});
    for (int i = 0; i < 28; ++i)
        spec.jordan.push_back({cd(40.0 + 3.0 * i, -20.0 + 2.0 * i), 1});
    const Contour c{cd(0, 0), 1.0};
    const FixtureTruth ft = weierstrass_fixture(spec, c);
    REQUIRE(ft.s == 12);

    const ShiftedFactorSet fs = factors_for(ft.pencil, c);
    SearchOptions opts;
    opts.p = 4;
    const SearchResult sr = search_upper_bound(ft.pencil, fs, opts);
    CHECK(sr.t == 12);
    CHECK(sr.rounds >= 2);
    CHECK(sr.U1.cols() == 12);
    CHECK_FALSE(sr.rank_warning);
    REQUIRE(sr.s_dagger_history.size() == static_cast<std::size_t>(sr.rounds));
    for (std::size_t i = 1; i < sr.s_dagger_history.size(); ++i)
        CHECK(sr.s_dagger_history[i] >= sr.s_dagger_history[i - 1]);
}

TEST_CASE("basis filling the whole space raises the rank warning") {
    const RegularPencil p = diag_pencil({cd(0.5, 0), cd(0.6, 0)});
    const ShiftedFactorSet fs = factors_for(p, Contour{cd(0, 0), 1.0});
    SearchOptions opts;
    opts.p = 2;
    const SearchResult sr = search_upper_bound(p, fs, opts);
    CHECK(sr.t == 2);
    CHECK(sr.rank_warning);
    CHECK(sr.U1.cols() == 2);
}

TEST_CASE("search options are validated") {
    const RegularPencil p = diag_pencil({cd(0.5, 0), cd(3, 0)});
    const ShiftedFactorSet fs = factors_for(p, Contour{cd(0, 0), 1.0}, 4);
    SearchOptions bad_alpha;
    bad_alpha.alpha = 1.0;
    CHECK_THROWS_AS(search_upper_bound(p, fs, bad_alpha), ParameterError);
    SearchOptions bad_p;
    bad_p.p = 0;
    CHECK_THROWS_AS(search_upper_bound(p, fs, bad_p), ParameterError);
}

TEST_CASE("search is deterministic for a fixed seed and differs across seeds") {
    const RegularPencil p = reversal_pencil();
    const ShiftedFactorSet fs = factors_for(p, Contour{cd(0, 0), 1.0});
    SearchOptions opts;
    opts.p = 3;
    const SearchResult a = search_upper_bound(p, fs, opts);
    const SearchResult b = search_upper_bound(p, fs, opts);
    CHECK(a.t == b.t);
    CHECK(a.s0 == b.s0);
    REQUIRE(a.U1.cols() == b.U1.cols());
    CHECK(gfeast_test::max_entry_diff(a.U1, b.U1) == 0.0);

    opts.seed = 999;
    const SearchResult c2 = search_upper_bound(p, fs, opts);
    CHECK(c2.t == a.t);
    CHECK(c2.s0 != a.s0);
}
