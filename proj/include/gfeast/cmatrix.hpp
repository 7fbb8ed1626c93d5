#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace gfeast {

using cd = std::complex<double>;

// Dense complex matrix, column-major storage.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols);
    // Takes ownership of column-major data; validates length and finiteness.
    CMatrix(std::size_t rows, std::size_t cols, std::vector<cd> data);

    static CMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    cd& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
    const cd& operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

    cd* col(std::size_t j) { return data_.data() + j * rows_; }
    const cd* col(std::size_t j) const { return data_.data() + j * rows_; }

    std::vector<cd>& data() { return data_; }
    const std::vector<cd>& data() const { return data_; }

    bool is_finite() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cd> data_;
};

CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator+(const CMatrix& a, const CMatrix& b);
CMatrix operator-(const CMatrix& a, const CMatrix& b);
CMatrix operator*(cd scalar, const CMatrix& a);

// Conjugate transpose.
CMatrix adjoint(const CMatrix& a);

std::vector<cd> mat_vec(const CMatrix& a, const std::vector<cd>& x);

double frobenius_norm(const CMatrix& a);
double max_abs(const CMatrix& a);
double norm2(const std::vector<cd>& x);

// Columns [lo, hi) of a.
CMatrix take_cols(const CMatrix& a, std::size_t lo, std::size_t hi);
// [a b] side by side.
CMatrix hcat(const CMatrix& a, const CMatrix& b);

} // namespace gfeast
