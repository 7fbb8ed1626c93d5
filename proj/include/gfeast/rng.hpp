#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "gfeast/cmatrix.hpp"

namespace gfeast {

// Deterministic Gaussian source.  Box-Muller on top of mt19937_64 so that a
// given seed produces the same stream on every platform; std::normal_distribution
// is not pinned down by the standard.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() {
        // 53-bit mantissa in [0, 1).
        return (gen_() >> 11) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do { u1 = uniform(); } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    cd cnormal() {
        const double re = normal();
        const double im = normal();
        return cd(re, im) * M_SQRT1_2;
    }

    // Real Gaussian entries stored as complex values.
    CMatrix normal_matrix(std::size_t rows, std::size_t cols) {
        CMatrix m(rows, cols);
        for (std::size_t j = 0; j < cols; ++j)
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = normal();
        return m;
    }

    CMatrix cnormal_matrix(std::size_t rows, std::size_t cols) {
        CMatrix m(rows, cols);
        for (std::size_t j = 0; j < cols; ++j)
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = cnormal();
        return m;
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace gfeast
