#include "gfeast/qr.hpp"

#include <cmath>

#include "gfeast/errors.hpp"

namespace gfeast {

namespace {

// Householder reflectors stored column-wise in v; beta[k] = 2 / (v_k^H v_k).
struct Reflectors {
    CMatrix v;
    std::vector<double> beta;
};

// Applies I - beta v v^H to columns [jlo, n) of a, rows [k, m).
void apply_reflector_left(CMatrix& a, const cd* v, double beta, std::size_t k,
                          std::size_t jlo) {
    const std::size_t m = a.rows(), n = a.cols();
    for (std::size_t j = jlo; j < n; ++j) {
        cd* cj = a.col(j);
        cd dot(0.0, 0.0);
        for (std::size_t i = k; i < m; ++i) dot += std::conj(v[i]) * cj[i];
        dot *= beta;
        if (dot == cd(0.0, 0.0)) continue;
        for (std::size_t i = k; i < m; ++i) cj[i] -= dot * v[i];
    }
}

// Factors a in place (R left in its upper part), recording reflectors.
// Performs k = min(m, n) steps; with pivoting enabled, columns are swapped to
// bring the largest remaining partial norm to the front and the swaps are
// recorded in perm.
Reflectors householder_factor(CMatrix& a, std::vector<int>* perm) {
    const std::size_t m = a.rows(), n = a.cols();
    const std::size_t steps = std::min(m, n);
    Reflectors refl;
    refl.v = CMatrix(m, steps);
    refl.beta.assign(steps, 0.0);

    for (std::size_t k = 0; k < steps; ++k) {
        if (perm) {
            std::size_t best = k;
            double best_norm = -1.0;
            for (std::size_t j = k; j < n; ++j) {
                double s = 0.0;
                const cd* cj = a.col(j);
                for (std::size_t i = k; i < m; ++i) s += std::norm(cj[i]);
                if (s > best_norm) { best_norm = s; best = j; }
            }
            if (best != k) {
                for (std::size_t i = 0; i < m; ++i) std::swap(a(i, k), a(i, best));
                std::swap((*perm)[k], (*perm)[best]);
            }
        }

        cd* ck = a.col(k);
        double xnorm = 0.0;
        for (std::size_t i = k; i < m; ++i) xnorm += std::norm(ck[i]);
        xnorm = std::sqrt(xnorm);

        cd* vk = refl.v.col(k);
        for (std::size_t i = 0; i < m; ++i) vk[i] = (i < k) ? cd(0.0, 0.0) : ck[i];
        if (xnorm == 0.0) {
            refl.beta[k] = 0.0;
            continue;
        }
        const cd x0 = vk[k];
        const cd phase = (x0 == cd(0.0, 0.0)) ? cd(1.0, 0.0) : x0 / std::abs(x0);
        vk[k] += phase * xnorm;
        double vnorm2 = 0.0;
        for (std::size_t i = k; i < m; ++i) vnorm2 += std::norm(vk[i]);
        if (vnorm2 == 0.0) {
            refl.beta[k] = 0.0;
            continue;
        }
        refl.beta[k] = 2.0 / vnorm2;

        apply_reflector_left(a, vk, refl.beta[k], k, k);
        for (std::size_t i = k + 1; i < m; ++i) ck[i] = cd(0.0, 0.0);
    }
    return refl;
}

// Accumulates the thin Q (m x steps) from stored reflectors.
CMatrix accumulate_q(const Reflectors& refl, std::size_t m) {
    const std::size_t steps = refl.beta.size();
    CMatrix q(m, steps);
    for (std::size_t j = 0; j < steps; ++j) q(j, j) = 1.0;
    for (std::size_t kk = steps; kk-- > 0;) {
        if (refl.beta[kk] != 0.0)
            apply_reflector_left(q, refl.v.col(kk), refl.beta[kk], kk, kk);
    }
    return q;
}

CMatrix extract_r(const CMatrix& a, std::size_t steps) {
    CMatrix r(steps, a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i <= std::min(j, steps - 1); ++i) r(i, j) = a(i, j);
    return r;
}

} // namespace

QrFactors qr(const CMatrix& m) {
    if (m.rows() < m.cols())
        throw DimensionError("qr: matrix has more columns than rows");
    if (m.cols() == 0)
        throw DimensionError("qr: matrix has no columns");
    CMatrix a = m;
    Reflectors refl = householder_factor(a, nullptr);
    QrFactors f;
    f.Q = accumulate_q(refl, a.rows());
    f.R = extract_r(a, a.cols());
    return f;
}

QrFactors rrqr(const CMatrix& m, double rel_tol) {
    if (m.rows() == 0 || m.cols() == 0)
        throw DimensionError("rrqr: matrix is empty");
    CMatrix a = m;
    QrFactors f;
    f.perm.resize(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) f.perm[j] = static_cast<int>(j);
    Reflectors refl = householder_factor(a, &f.perm);
    const std::size_t steps = refl.beta.size();
    f.Q = accumulate_q(refl, a.rows());
    f.R = extract_r(a, steps);

    const double r00 = std::abs(f.R(0, 0));
    int rank = 0;
    for (std::size_t i = 0; i < steps; ++i)
        if (std::abs(f.R(i, i)) > rel_tol * r00) ++rank;
    f.rank = rank;
    return f;
}

} // namespace gfeast
