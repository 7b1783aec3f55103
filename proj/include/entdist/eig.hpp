// eig.hpp — cyclic Jacobi eigensolver for dense complex Hermitian matrices.

#pragma once

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "entdist/tensor.hpp"

namespace entdist {

/// Full real spectrum (descending) with orthonormal eigenvectors as the
/// columns of `eigenvectors`, so A = V diag(lambda) V^dag.
struct HermitianSpectrum {
    std::vector<double> eigenvalues;
    DenseOperator eigenvectors;
    double offdiag_residual = 0.0;  // final off-diagonal Frobenius norm
    bool converged = true;
    int sweeps = 0;
};

namespace detail {

inline double offdiag_frobenius(const DenseOperator& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace detail

/// Diagonalizes a Hermitian matrix with cyclic Jacobi rotations.  Converges
/// when the off-diagonal Frobenius norm drops below 1e-12 * ||A||_F, with a
/// cap of 100 sweeps; the achieved residual is reported either way.  The
/// sweep order is fixed, so identical input yields identical output.  Within
/// a degenerate eigenvalue cluster the eigenvector basis is solver-dependent;
/// compare spectra or subspace projectors, not raw columns.
inline HermitianSpectrum hermitian_eig(const DenseOperator& a) {
    constexpr double kHermTol = 1e-10;
    constexpr double kConvergenceFactor = 1e-12;
    constexpr int kMaxSweeps = 100;

    const std::size_t n = a.dim();
    if (n == 0) throw std::invalid_argument("hermitian_eig: empty matrix");
    if (!a.is_hermitian(kHermTol * std::max(1.0, a.frobenius_norm())))
        throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");

    DenseOperator w = a;
    // Exact-Hermitian working copy; drop roundoff-level skew parts.
    for (std::size_t i = 0; i < n; ++i) {
        w(i, i) = cplx{w(i, i).real(), 0.0};
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx m = 0.5 * (w(i, j) + std::conj(w(j, i)));
            w(i, j) = m;
            w(j, i) = std::conj(m);
        }
    }
    DenseOperator v = DenseOperator::identity(n);

    const double norm_a = w.frobenius_norm();
    const double threshold = kConvergenceFactor * norm_a;

    HermitianSpectrum out;
    out.converged = false;
    double off = detail::offdiag_frobenius(w);
    int sweep = 0;
    while (sweep < kMaxSweeps) {
        if (off <= threshold) {
            out.converged = true;
            break;
        }
        ++sweep;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = w(p, q);
                const double ab = std::abs(apq);
                if (ab == 0.0) continue;
                const double app = w(p, p).real();
                const double aqq = w(q, q).real();
                // 2x2 Hermitian block [[app, apq],[conj(apq), aqq]] is
                // diagonalized by U = [[c, s],[-conj(s), c]] with c real,
                // s = (apq/|apq|) * sigma, reducing to the real Jacobi angle.
                const double tau = (aqq - app) / (2.0 * ab);
                const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                              : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const cplx s = (apq / ab) * (t * c);

                // Columns: B = W U.
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx wip = w(i, p), wiq = w(i, q);
                    w(i, p) = c * wip - std::conj(s) * wiq;
                    w(i, q) = s * wip + c * wiq;
                }
                // Rows: W' = U^dag B.
                for (std::size_t j = 0; j < n; ++j) {
                    const cplx wpj = w(p, j), wqj = w(q, j);
                    w(p, j) = c * wpj - s * wqj;
                    w(q, j) = std::conj(s) * wpj + c * wqj;
                }
                w(p, q) = cplx{0.0, 0.0};
                w(q, p) = cplx{0.0, 0.0};
                w(p, p) = cplx{w(p, p).real(), 0.0};
                w(q, q) = cplx{w(q, q).real(), 0.0};

                for (std::size_t i = 0; i < n; ++i) {
                    const cplx vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - std::conj(s) * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
        }
        off = detail::offdiag_frobenius(w);
        if (off <= threshold) {
            out.converged = true;
            break;
        }
    }

    out.sweeps = sweep;
    out.offdiag_residual = off;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&w](std::size_t i, std::size_t j) {
        return w(i, i).real() > w(j, j).real();
    });

    out.eigenvalues.resize(n);
    out.eigenvectors = DenseOperator(n);
    for (std::size_t c = 0; c < n; ++c) {
        out.eigenvalues[c] = w(order[c], order[c]).real();
        for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c) = v(r, order[c]);
    }
    return out;
}

}  // namespace entdist
