#include <doctest.h>

#include "gfeast/cmatrix.hpp"
#include "gfeast/errors.hpp"
#include "gfeast/rng.hpp"
#include "test_support.hpp"

using namespace gfeast;
using gfeast_test::max_entry_diff;

TEST_CASE("matrix storage is column-major and zero-initialized") {
    CMatrix m(3, 2);
    CHECK(m.rows() == 3);
    CHECK(m.cols() == 2);
    for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t i = 0; i < 3; ++i) CHECK(m(i, j) == cd(0.0, 0.0));
    m(2, 1) = cd(1.0, -2.0);
    CHECK(m.data()[1 * 3 + 2] == cd(1.0, -2.0));
    CHECK(m.col(1)[2] == cd(1.0, -2.0));
}

TEST_CASE("constructor rejects wrong length and non-finite data") {
    CHECK_THROWS_AS(CMatrix(2, 2, std::vector<cd>(3)), DimensionError);
    std::vector<cd> bad(4, cd(1.0, 0.0));
    bad[2] = cd(std::nan(""), 0.0);
    CHECK_THROWS_AS(CMatrix(2, 2, bad), ParameterError);
}

TEST_CASE("product matches a hand-computed 2x2 case") {
    CMatrix a(2, 2, {cd(1, 0), cd(3, 0), cd(2, 0), cd(4, 0)});
    CMatrix b(2, 2, {cd(0, 1), cd(1, 0), cd(2, 0), cd(0, -1)});
    const CMatrix c = a * b;
    CHECK(std::abs(c(0, 0) - (cd(0, 1) * 1.0 + 2.0)) < 1e-15);
    CHECK(std::abs(c(1, 0) - (cd(0, 3) + 4.0)) < 1e-15);
    CHECK(std::abs(c(0, 1) - (2.0 + 2.0 * cd(0, -1))) < 1e-15);
    CHECK(std::abs(c(1, 1) - (6.0 + 4.0 * cd(0, -1))) < 1e-15);
}

TEST_CASE("product respects identity and rejects shape mismatch") {
    Rng rng(5);
    const CMatrix a = rng.cnormal_matrix(4, 3);
    CHECK(max_entry_diff(CMatrix::identity(4) * a, a) == 0.0);
    CHECK(max_entry_diff(a * CMatrix::identity(3), a) == 0.0);
    CHECK_THROWS_AS(a * a, DimensionError);
}

TEST_CASE("adjoint conjugates and transposes") {
    CMatrix a(2, 3);
    a(0, 2) = cd(1.0, 2.0);
    const CMatrix h = adjoint(a);
    CHECK(h.rows() == 3);
    CHECK(h.cols() == 2);
    CHECK(h(2, 0) == cd(1.0, -2.0));
}

TEST_CASE("hcat and take_cols round-trip") {
    Rng rng(7);
    const CMatrix a = rng.cnormal_matrix(5, 2);
    const CMatrix b = rng.cnormal_matrix(5, 3);
    const CMatrix c = hcat(a, b);
    CHECK(c.cols() == 5);
    CHECK(max_entry_diff(take_cols(c, 0, 2), a) == 0.0);
    CHECK(max_entry_diff(take_cols(c, 2, 5), b) == 0.0);
    CHECK_THROWS_AS(take_cols(c, 3, 6), DimensionError);
}

TEST_CASE("norms agree with definitions") {
    CMatrix a(1, 2, {cd(3.0, 0.0), cd(0.0, 4.0)});
    CHECK(frobenius_norm(a) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(max_abs(a) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(norm2({cd(3.0, 0.0), cd(0.0, 4.0)}) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("mat_vec matches the matrix product") {
    Rng rng(11);
    const CMatrix a = rng.cnormal_matrix(4, 4);
    CMatrix x(4, 1);
    std::vector<cd> xv(4);
    for (std::size_t i = 0; i < 4; ++i) {
        xv[i] = rng.cnormal();
        x(i, 0) = xv[i];
    }
    const CMatrix ax = a * x;
    const std::vector<cd> y = mat_vec(a, xv);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(y[i] - ax(i, 0)) < 1e-15);
}
