#pragma once

#include <cstddef>
#include <vector>

#include "gfeast/cmatrix.hpp"

namespace gfeast {

// Circle in the complex plane: |z - center| = radius.
struct Contour {
    cd center;
    double radius = 0.0;
};

// Gauss-Legendre rule on [-1, 1], nodes ascending.
struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Discretized circle: nodes z_j on the contour with combined weights
// w_j = (1/2) * omega_j * (z_j - center), so that a contour integral
// (1/2 pi i) * integral of f becomes sum_j w_j f(z_j).
struct ContourRule {
    Contour contour;
    std::vector<cd> z;
    std::vector<cd> w;
};

// Gauss-Legendre nodes and weights by Newton iteration on the Legendre
// polynomial, started from Chebyshev-angle guesses.
QuadRule gauss_legendre(std::size_t q);

ContourRule circle_rule(const Contour& c, const QuadRule& rule);

} // namespace gfeast
