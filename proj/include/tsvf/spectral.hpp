#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "tsvf/complexmat.hpp"
#include "tsvf/observable.hpp"

namespace tsvf {

/// Eigenvalues (ascending, degenerate values merged) with one subspace
/// projector per eigenvalue.  Projectors are Hermitian, idempotent, mutually
/// orthogonal and complete; sum(lambda_i P_i) reconstructs the observable.
struct SpectralForm {
    std::vector<double> eigenvalues;
    std::vector<Matrix> projectors;

    std::size_t size() const { return eigenvalues.size(); }

    Matrix reconstruct() const {
        Matrix m(projectors.front().dim());
        for (std::size_t k = 0; k < eigenvalues.size(); ++k)
            m = m + cdouble(eigenvalues[k]) * projectors[k];
        return m;
    }
};

namespace detail {

/// Unitary 2x2 transform diagonalizing [[a, b], [conj(b), d]] with a, d
/// real: a phase factor absorbing arg(b) composed with the classic real
/// rotation.  tan(theta) comes from the cancellation-free root of
/// t^2 + 2*tau*t - 1 = 0, so |theta| <= pi/4 and the pivot is annihilated
/// stably.
struct JacobiRotation {
    cdouble u11, u21;  // first column
    cdouble u12, u22;  // second column
};

inline JacobiRotation rotation_for(double a, cdouble b, double d) {
    const double babs = std::abs(b);
    if (babs < 1e-300) return {1.0, 0.0, 0.0, 1.0};
    const cdouble phase = std::conj(b) / babs;  // e^{-i arg b}
    const double tau = (d - a) / (2.0 * babs);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(tau, 1.0));
    const double c = 1.0 / std::hypot(t, 1.0);
    const double s = t * c;
    return {cdouble(c), -s * phase, cdouble(s), c * phase};
}

}  // namespace detail

/// Cyclic Jacobi diagonalization of a Hermitian matrix.  Off-diagonal norm
/// is driven below 1e-13 relative to the input scale; eigenvalues closer
/// than degeneracy_tol (relative to the spectral radius) are merged into one
/// degenerate eigenvalue carrying the full subspace projector.
inline SpectralForm spectral_decompose(const Observable& obs, double degeneracy_tol = 1e-9) {
    const std::size_t n = obs.dim();
    Matrix a = obs.matrix();
    Matrix v = Matrix::identity(n);

    const double scale = std::max(1.0, a.frobenius_norm());
    const double off_target = 1e-13 * scale;
    const double rot_threshold = off_target / std::max<double>(1, n * n);

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * std::norm(a(i, j));
        return std::sqrt(s);
    };

    constexpr int kMaxSweeps = 100;
    int sweep = 0;
    while (off_norm() > off_target) {
        if (++sweep > kMaxSweeps)
            throw std::runtime_error("spectral_decompose: Jacobi iteration did not converge");
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) <= rot_threshold) continue;
                const auto rot =
                    detail::rotation_for(a(p, p).real(), a(p, q), a(q, q).real());
                // rows p,q of U^H A
                for (std::size_t j = 0; j < n; ++j) {
                    const cdouble ap = a(p, j), aq = a(q, j);
                    a(p, j) = std::conj(rot.u11) * ap + std::conj(rot.u21) * aq;
                    a(q, j) = std::conj(rot.u12) * ap + std::conj(rot.u22) * aq;
                }
                // columns p,q of (U^H A) U
                for (std::size_t i = 0; i < n; ++i) {
                    const cdouble ap = a(i, p), aq = a(i, q);
                    a(i, p) = ap * rot.u11 + aq * rot.u21;
                    a(i, q) = ap * rot.u12 + aq * rot.u22;
                }
                // accumulate eigenvectors V <- V U
                for (std::size_t i = 0; i < n; ++i) {
                    const cdouble vp = v(i, p), vq = v(i, q);
                    v(i, p) = vp * rot.u11 + vq * rot.u21;
                    v(i, q) = vp * rot.u12 + vq * rot.u22;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }

    std::vector<double> lam(n);
    for (std::size_t i = 0; i < n; ++i) lam[i] = a(i, i).real();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return lam[x] < lam[y]; });

    double radius = 0.0;
    for (double l : lam) radius = std::max(radius, std::abs(l));
    const double merge_gap = degeneracy_tol * std::max(1.0, radius);

    SpectralForm form;
    std::size_t start = 0;
    while (start < n) {
        std::size_t stop = start + 1;
        while (stop < n && lam[order[stop]] - lam[order[stop - 1]] <= merge_gap) ++stop;

        double mean = 0.0;
        Matrix proj(n);
        for (std::size_t k = start; k < stop; ++k) {
            const std::size_t col = order[k];
            mean += lam[col];
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    proj(i, j) += v(i, col) * std::conj(v(j, col));
        }
        form.eigenvalues.push_back(mean / static_cast<double>(stop - start));
        form.projectors.push_back(std::move(proj));
        start = stop;
    }
    return form;
}

}  // namespace tsvf
