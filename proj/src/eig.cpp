#include "gfeast/eig.hpp"

#include <cmath>
#include <limits>

#include "gfeast/errors.hpp"
#include "gfeast/rng.hpp"

namespace gfeast {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Givens {
    double c;
    cd s;
};

// G [a b]^T = [r 0]^T with G = [[c, s], [-conj(s), c]], c real.
Givens make_givens(cd a, cd b, cd& r) {
    Givens g;
    if (b == cd(0.0, 0.0)) {
        g.c = 1.0;
        g.s = cd(0.0, 0.0);
        r = a;
        return g;
    }
    if (a == cd(0.0, 0.0)) {
        g.c = 0.0;
        g.s = std::conj(b) / std::abs(b);
        r = std::abs(b);
        return g;
    }
    const double aa = std::abs(a), ab = std::abs(b);
    const double d = std::hypot(aa, ab);
    const cd phase = a / aa;
    g.c = aa / d;
    g.s = phase * std::conj(b) / d;
    r = phase * d;
    return g;
}

void rotate_rows(CMatrix& h, const Givens& g, std::size_t k, std::size_t jlo,
                 std::size_t jhi) {
    for (std::size_t j = jlo; j <= jhi; ++j) {
        const cd x = h(k, j);
        const cd y = h(k + 1, j);
        h(k, j) = g.c * x + g.s * y;
        h(k + 1, j) = -std::conj(g.s) * x + g.c * y;
    }
}

void rotate_cols(CMatrix& h, const Givens& g, std::size_t k, std::size_t ilo,
                 std::size_t ihi) {
    for (std::size_t i = ilo; i <= ihi; ++i) {
        const cd x = h(i, k);
        const cd y = h(i, k + 1);
        h(i, k) = g.c * x + std::conj(g.s) * y;
        h(i, k + 1) = -g.s * x + g.c * y;
    }
}

// Wilkinson shift from the trailing 2x2 of the active window.
cd wilkinson_shift(const CMatrix& h, std::size_t hi) {
    const cd a = h(hi - 1, hi - 1);
    const cd b = h(hi - 1, hi);
    const cd c = h(hi, hi - 1);
    const cd d = h(hi, hi);
    const cd delta = 0.5 * (a - d);
    const cd root = std::sqrt(delta * delta + b * c);
    const cd den1 = delta + root;
    const cd den2 = delta - root;
    const cd den = (std::abs(den1) >= std::abs(den2)) ? den1 : den2;
    if (den == cd(0.0, 0.0)) return d;
    return d - b * c / den;
}

void qr_sweep(CMatrix& h, std::size_t lo, std::size_t hi, cd shift) {
    cd r;
    cd x = h(lo, lo) - shift;
    cd y = h(lo + 1, lo);
    for (std::size_t k = lo; k < hi; ++k) {
        const Givens g = make_givens(x, y, r);
        const std::size_t jlo = (k == lo) ? lo : k - 1;
        rotate_rows(h, g, k, jlo, h.cols() - 1);
        if (k > lo) h(k + 1, k - 1) = cd(0.0, 0.0);
        rotate_cols(h, g, k, 0, std::min(k + 2, hi));
        if (k + 1 < hi) {
            x = h(k + 1, k);
            y = h(k + 2, k);
        }
    }
}

} // namespace

HessenbergForm hessenberg_reduce(const CMatrix& a) {
    if (a.rows() != a.cols())
        throw DimensionError("hessenberg_reduce: matrix must be square");
    const std::size_t n = a.rows();
    HessenbergForm f;
    f.H = a;
    f.v = CMatrix(n, n >= 2 ? n - 2 : 0);
    f.beta.assign(n >= 2 ? n - 2 : 0, 0.0);
    CMatrix& h = f.H;

    for (std::size_t k = 0; k + 2 < n; ++k) {
        double xnorm = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) xnorm += std::norm(h(i, k));
        xnorm = std::sqrt(xnorm);
        cd* vk = f.v.col(k);
        for (std::size_t i = 0; i < n; ++i) vk[i] = (i <= k) ? cd(0.0, 0.0) : h(i, k);
        if (xnorm == 0.0) continue;
        const cd x0 = vk[k + 1];
        const cd phase = (x0 == cd(0.0, 0.0)) ? cd(1.0, 0.0) : x0 / std::abs(x0);
        vk[k + 1] += phase * xnorm;
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(vk[i]);
        if (vnorm2 == 0.0) continue;
        const double beta = 2.0 / vnorm2;
        f.beta[k] = beta;

        // H <- P H, rows k+1..n-1
        for (std::size_t j = k; j < n; ++j) {
            cd dot(0.0, 0.0);
            for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(vk[i]) * h(i, j);
            dot *= beta;
            if (dot == cd(0.0, 0.0)) continue;
            for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= dot * vk[i];
        }
        // H <- H P, cols k+1..n-1
        for (std::size_t i = 0; i < n; ++i) {
            cd dot(0.0, 0.0);
            for (std::size_t j = k + 1; j < n; ++j) dot += h(i, j) * vk[j];
            dot *= beta;
            if (dot == cd(0.0, 0.0)) continue;
            for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= dot * std::conj(vk[j]);
        }
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = cd(0.0, 0.0);
    }
    return f;
}

std::vector<cd> hessenberg_eigenvalues(CMatrix h) {
    const std::size_t n = h.rows();
    if (n == 0) return {};
    if (n == 1) return {h(0, 0)};

    const double hnorm = frobenius_norm(h);
    const double tiny = kEps * std::max(hnorm, 1e-300);
    auto negligible = [&](std::size_t i) {
        const double bound = kEps * (std::abs(h(i - 1, i - 1)) + std::abs(h(i, i)));
        return std::abs(h(i, i - 1)) <= std::max(bound, tiny);
    };

    const std::size_t budget = 30 * n;
    std::size_t sweeps = 0;
    std::size_t hi = n - 1;
    std::size_t stall = 0;

    while (hi > 0) {
        if (negligible(hi)) {
            h(hi, hi - 1) = cd(0.0, 0.0);
            --hi;
            stall = 0;
            continue;
        }
        std::size_t lo = hi;
        while (lo > 0 && !negligible(lo)) --lo;
        if (lo > 0) h(lo, lo - 1) = cd(0.0, 0.0);

        cd shift = wilkinson_shift(h, hi);
        if (stall > 0 && stall % 10 == 0)
            shift = h(hi, hi) + cd(0.75 * std::abs(h(hi, hi - 1)), 0.0);
        qr_sweep(h, lo, hi, shift);

        ++sweeps;
        ++stall;
        if (sweeps > budget)
            throw NonConvergenceError("eigenvalue iteration exceeded its sweep budget");
    }

    std::vector<cd> vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = h(i, i);
    return vals;
}

std::vector<cd> dense_eigenvalues(const CMatrix& a) {
    HessenbergForm f = hessenberg_reduce(a);
    return hessenberg_eigenvalues(std::move(f.H));
}

namespace {

// LU of (H - lambda I) for upper Hessenberg H: adjacent-row pivoting only.
struct HessLu {
    CMatrix u;               // upper triangular result
    std::vector<cd> mult;    // multiplier applied at step k
    std::vector<char> swapped;
    double floor;
};

HessLu hess_shifted_lu(const CMatrix& hess, cd lambda, double hnorm) {
    const std::size_t n = hess.rows();
    HessLu f;
    f.u = hess;
    for (std::size_t i = 0; i < n; ++i) f.u(i, i) -= lambda;
    f.mult.assign(n > 0 ? n - 1 : 0, cd(0.0, 0.0));
    f.swapped.assign(n > 0 ? n - 1 : 0, 0);
    f.floor = kEps * std::max(hnorm, 1e-300);

    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (std::abs(f.u(k + 1, k)) > std::abs(f.u(k, k))) {
            f.swapped[k] = 1;
            for (std::size_t j = k; j < n; ++j) std::swap(f.u(k, j), f.u(k + 1, j));
        }
        cd piv = f.u(k, k);
        if (std::abs(piv) < f.floor) {
            piv = cd(f.floor, 0.0);
            f.u(k, k) = piv;
        }
        const cd l = f.u(k + 1, k) / piv;
        f.mult[k] = l;
        f.u(k + 1, k) = cd(0.0, 0.0);
        if (l != cd(0.0, 0.0))
            for (std::size_t j = k + 1; j < n; ++j) f.u(k + 1, j) -= l * f.u(k, j);
    }
    if (n > 0 && std::abs(f.u(n - 1, n - 1)) < f.floor) f.u(n - 1, n - 1) = cd(f.floor, 0.0);
    return f;
}

void hess_lu_solve(const HessLu& f, std::vector<cd>& b) {
    const std::size_t n = f.u.rows();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (f.swapped[k]) std::swap(b[k], b[k + 1]);
        b[k + 1] -= f.mult[k] * b[k];
    }
    for (std::size_t ii = n; ii-- > 0;) {
        cd s = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= f.u(ii, j) * b[j];
        b[ii] = s / f.u(ii, ii);
    }
}

void normalize(std::vector<cd>& x) {
    const double nrm = norm2(x);
    if (nrm == 0.0) return;
    for (cd& v : x) v /= nrm;
}

} // namespace

DenseEigs dense_eigs(const CMatrix& a, std::uint64_t seed) {
    const std::size_t n = a.rows();
    HessenbergForm hf = hessenberg_reduce(a);
    DenseEigs out;
    out.values = hessenberg_eigenvalues(hf.H);
    out.vectors = CMatrix(n, n);
    const double hnorm = frobenius_norm(hf.H);

    for (std::size_t i = 0; i < n; ++i) {
        // Separate coincident shifts slightly so repeated eigenvalues do not
        // all hand the same linear system to inverse iteration.
        cd lambda = out.values[i];
        std::size_t dup = 0;
        for (std::size_t j = 0; j < i; ++j)
            if (std::abs(out.values[j] - lambda) <= 1e3 * kEps * (1.0 + std::abs(lambda))) ++dup;
        if (dup > 0) lambda += cd(static_cast<double>(dup) * 16.0 * kEps * (hnorm + 1.0), 0.0);

        HessLu lu = hess_shifted_lu(hf.H, lambda, hnorm);
        Rng rng(seed + 0x9e3779b97f4a7c15ull * (i + 1));
        std::vector<cd> x(n);
        for (cd& v : x) v = rng.cnormal();
        normalize(x);
        hess_lu_solve(lu, x);
        normalize(x);
        hess_lu_solve(lu, x);
        normalize(x);

        // Back-transform through the stored reflectors.
        for (std::size_t kk = hf.beta.size(); kk-- > 0;) {
            if (hf.beta[kk] == 0.0) continue;
            const cd* vk = hf.v.col(kk);
            cd dot(0.0, 0.0);
            for (std::size_t r = kk + 1; r < n; ++r) dot += std::conj(vk[r]) * x[r];
            dot *= hf.beta[kk];
            if (dot == cd(0.0, 0.0)) continue;
            for (std::size_t r = kk + 1; r < n; ++r) x[r] -= dot * vk[r];
        }
        normalize(x);
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, i) = x[r];
    }
    return out;
}

} // namespace gfeast
