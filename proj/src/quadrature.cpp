#include "gfeast/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "gfeast/errors.hpp"

namespace gfeast {

namespace {

// Legendre P_q and its derivative at x by the three-term recurrence.
void legendre(std::size_t q, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    if (q == 0) { p = p0; dp = 0.0; return; }
    for (std::size_t k = 2; k <= q; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = q * (x * p1 - p0) / (x * x - 1.0);
}

} // namespace

QuadRule gauss_legendre(std::size_t q) {
    if (q < 1)
        throw ParameterError("gauss_legendre: need at least one node");
    QuadRule rule;
    rule.nodes.resize(q);
    rule.weights.resize(q);

    if (q == 1) {
        rule.nodes[0] = 0.0;
        rule.weights[0] = 2.0;
        return rule;
    }

    for (std::size_t k = 0; k < q; ++k) {
        double x = std::cos(M_PI * (k + 0.75) / (q + 0.5));
        double p = 0.0, dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            legendre(q, x, p, dp);
            const double step = p / dp;
            x -= step;
            if (std::abs(step) < 1e-15) break;
        }
        legendre(q, x, p, dp);
        rule.nodes[k] = x;
        rule.weights[k] = 2.0 / ((1.0 - x * x) * dp * dp);
    }

    // The Chebyshev guesses run from +1 toward -1; report ascending.
    std::reverse(rule.nodes.begin(), rule.nodes.end());
    std::reverse(rule.weights.begin(), rule.weights.end());
    return rule;
}

ContourRule circle_rule(const Contour& c, const QuadRule& rule) {
    if (!(c.radius > 0.0))
        throw ParameterError("circle_rule: radius must be positive");
    ContourRule out;
    out.contour = c;
    const std::size_t q = rule.nodes.size();
    out.z.resize(q);
    out.w.resize(q);
    for (std::size_t j = 0; j < q; ++j) {
        const double theta = (1.0 + rule.nodes[j]) * M_PI;
        const cd offset = c.radius * cd(std::cos(theta), std::sin(theta));
        out.z[j] = c.center + offset;
        out.w[j] = 0.5 * rule.weights[j] * offset;
    }
    return out;
}

} // namespace gfeast
