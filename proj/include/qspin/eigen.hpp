#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "matrix.hpp"

namespace qspin {

struct EigResult {
    std::vector<double> values;  // ascending
    Mat vectors;                 // orthonormal eigenvectors as columns, same order
};

// Cyclic complex Jacobi for Hermitian matrices. Each off-diagonal pivot is
// phase-reduced to a real symmetric 2x2 block, then rotated away with the
// classic sym.schur2 choice of (c, s). Quadratic convergence near the end.
inline EigResult eig_hermitian(const Mat& h, double tol = kDefaultTol) {
    require(h.square(), "eig_hermitian: matrix not square");
    const std::size_t n = h.rows;
    require(n >= 1, "eig_hermitian: empty matrix");
    require(n <= kMaxDenseDim, "eig_hermitian: dimension exceeds dense cap");
    require(hermitian_residual(h) <= tol, "eig_hermitian: matrix not Hermitian");

    // symmetrize exactly so rounding in the input cannot bias the sweeps
    Mat a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));

    Mat v = Mat::identity(n);
    const double scale = std::max(1.0, fro_norm(a));
    const double stop = 1e-13 * scale;

    for (int sweep = 0; sweep < 80; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * std::norm(a(p, q));
        off = std::sqrt(off);
        if (off <= stop) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cx apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= 1e-300) continue;
                const cx phase = apq / r;  // apq = r * phase
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();

                const double tau = (aqq - app) / (2.0 * r);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // G differs from identity only at (p,p)=c, (p,q)=s,
                // (q,p)=-s*conj(phase), (q,q)=c*conj(phase); a <- G^dag a G
                for (std::size_t j = 0; j < n; ++j) {
                    const cx ap = a(p, j), aq = a(q, j);
                    a(p, j) = c * ap - s * phase * aq;
                    a(q, j) = s * ap + c * phase * aq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const cx ap = a(i, p), aq = a(i, q);
                    a(i, p) = c * ap - s * std::conj(phase) * aq;
                    a(i, q) = s * ap + c * std::conj(phase) * aq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const cx vp = v(i, p), vq = v(i, q);
                    v(i, p) = c * vp - s * std::conj(phase) * vq;
                    v(i, q) = s * vp + c * std::conj(phase) * vq;
                }
                a(p, q) = std::conj(a(q, p));  // keep hermiticity exact
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigResult res;
    res.values.resize(n);
    res.vectors = Mat(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        res.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) res.vectors(i, k) = v(i, order[k]);
    }
    return res;
}

// exp(-i H t) via spectral decomposition
inline Mat evolution_unitary(const Mat& hamiltonian, double t) {
    const EigResult e = eig_hermitian(hamiltonian);
    const std::size_t n = hamiltonian.rows;
    Mat u(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const cx ph = std::exp(cx{0.0, -e.values[k] * t});
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                u(i, j) += ph * e.vectors(i, k) * std::conj(e.vectors(j, k));
    }
    return u;
}

}  // namespace qspin
