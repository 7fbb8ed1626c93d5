#include "gfeast/cmatrix.hpp"

#include <cmath>
#include <utility>

#include "gfeast/errors.hpp"

namespace gfeast {

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cd(0.0, 0.0)) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cd> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
        throw DimensionError("matrix data length does not match rows*cols");
    if (!is_finite())
        throw ParameterError("matrix entries must be finite");
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

bool CMatrix::is_finite() const {
    for (const cd& v : data_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows())
        throw DimensionError("matrix product: inner dimensions differ");
    const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
    CMatrix c(m, n);
    for (std::size_t j = 0; j < n; ++j) {
        cd* cj = c.col(j);
        const cd* bj = b.col(j);
        for (std::size_t l = 0; l < k; ++l) {
            const cd blj = bj[l];
            if (blj == cd(0.0, 0.0)) continue;
            const cd* al = a.col(l);
            for (std::size_t i = 0; i < m; ++i) cj[i] += al[i] * blj;
        }
    }
    return c;
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("matrix sum: shapes differ");
    CMatrix c = a;
    for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] += b.data()[i];
    return c;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("matrix difference: shapes differ");
    CMatrix c = a;
    for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] -= b.data()[i];
    return c;
}

CMatrix operator*(cd scalar, const CMatrix& a) {
    CMatrix c = a;
    for (cd& v : c.data()) v *= scalar;
    return c;
}

CMatrix adjoint(const CMatrix& a) {
    CMatrix c(a.cols(), a.rows());
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) c(j, i) = std::conj(a(i, j));
    return c;
}

std::vector<cd> mat_vec(const CMatrix& a, const std::vector<cd>& x) {
    if (a.cols() != x.size())
        throw DimensionError("matrix-vector product: inner dimensions differ");
    std::vector<cd> y(a.rows(), cd(0.0, 0.0));
    for (std::size_t j = 0; j < a.cols(); ++j) {
        const cd xj = x[j];
        if (xj == cd(0.0, 0.0)) continue;
        const cd* aj = a.col(j);
        for (std::size_t i = 0; i < a.rows(); ++i) y[i] += aj[i] * xj;
    }
    return y;
}

double frobenius_norm(const CMatrix& a) {
    double s = 0.0;
    for (const cd& v : a.data()) s += std::norm(v);
    return std::sqrt(s);
}

double max_abs(const CMatrix& a) {
    double m = 0.0;
    for (const cd& v : a.data()) m = std::max(m, std::abs(v));
    return m;
}

double norm2(const std::vector<cd>& x) {
    double s = 0.0;
    for (const cd& v : x) s += std::norm(v);
    return std::sqrt(s);
}

CMatrix take_cols(const CMatrix& a, std::size_t lo, std::size_t hi) {
    if (lo > hi || hi > a.cols())
        throw DimensionError("take_cols: invalid column range");
    CMatrix c(a.rows(), hi - lo);
    for (std::size_t j = lo; j < hi; ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) c(i, j - lo) = a(i, j);
    return c;
}

CMatrix hcat(const CMatrix& a, const CMatrix& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (a.rows() != b.rows())
        throw DimensionError("hcat: row counts differ");
    CMatrix c(a.rows(), a.cols() + b.cols());
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j)
        for (std::size_t i = 0; i < b.rows(); ++i) c(i, j + a.cols()) = b(i, j);
    return c;
}

} // namespace gfeast
