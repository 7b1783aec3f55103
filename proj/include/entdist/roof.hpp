// roof.hpp — convex-roof extension of the entanglement measure to mixed states:
//   E(rho) = min over decompositions rho = sum_j p_j |psi_j><psi_j|
//            of sum_j p_j E(|psi_j>).
// Length-L ensembles are parameterized by L x r isometries V acting on the
// scaled eigenbasis of rho (sqrt(p_j) |psi_j> = sum_i V[j][i] sqrt(lambda_i)
// |e_i>), and the ensemble average is minimized by random-restart projected
// gradient descent on the isometry manifold.  The optimizer is a heuristic:
// the returned value is an upper bound on the true roof, never a claim of
// global optimality.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "entdist/eig.hpp"
#include "entdist/measure.hpp"
#include "entdist/random.hpp"
#include "entdist/tensor.hpp"

namespace entdist {

struct DensityMatrix {
    Dims dims;
    DenseOperator rho;

    DensityMatrix(Dims d, DenseOperator r) : dims(std::move(d)), rho(std::move(r)) {
        if (rho.dim() != dims.total())
            throw std::invalid_argument("DensityMatrix: matrix size does not match dims");
    }

    double hermiticity_defect() const {
        DenseOperator diff = rho - rho.adjoint();
        return 0.5 * diff.frobenius_norm();
    }
    double trace_defect() const { return std::abs(rho.trace() - cplx{1.0, 0.0}); }
    double min_eigenvalue() const { return hermitian_eig(rho).eigenvalues.back(); }
};

inline DensityMatrix density_from_state(const StateVector& s) {
    DenseOperator rho(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) rho(i, j) = s[i] * std::conj(s[j]);
    return DensityMatrix(s.dims(), std::move(rho));
}

/// Pure-state ensemble {p_j, |psi_j>}; probabilities sum to one and the
/// weighted projectors reconstruct the source density matrix.
struct Decomposition {
    std::vector<double> probs;
    std::vector<StateVector> states;

    double reconstruction_error(const DensityMatrix& dm) const {
        DenseOperator acc(dm.rho.dim());
        for (std::size_t j = 0; j < probs.size(); ++j) {
            const StateVector& s = states[j];
            for (std::size_t a = 0; a < s.size(); ++a)
                for (std::size_t b = 0; b < s.size(); ++b)
                    acc(a, b) += probs[j] * s[a] * std::conj(s[b]);
        }
        acc -= dm.rho;
        return acc.frobenius_norm();
    }
};

struct RoofConfig {
    int ensemble_len = 0;  // 0 picks max(r^2, 4)
    int restarts = 32;
    int max_iters = 500;
    double step_tol = 1e-9;
    std::uint64_t seed = 0;
};

struct RoofResult {
    double upper_bound = 0.0;  // heuristic upper bound on the roof, never exact
    Decomposition best;
    std::vector<double> restart_values;  // achieved objective per restart
    int best_restart = 0;
};

namespace detail {

/// Eigen-data of rho above the rank threshold, scaled for ensemble building.
struct RoofBasis {
    std::vector<double> lambda;           // kept eigenvalues, descending
    std::vector<std::vector<cplx>> scaled;  // sqrt(lambda_i) |e_i>
    std::size_t rank = 0;
};

inline RoofBasis roof_basis(const DensityMatrix& dm) {
    constexpr double kRankThreshold = 1e-12;
    const HermitianSpectrum spec = hermitian_eig(dm.rho);
    RoofBasis basis;
    for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
        const double lam = spec.eigenvalues[i];
        if (lam < kRankThreshold) continue;  // below threshold: exact zero
        basis.lambda.push_back(lam);
        std::vector<cplx> col(dm.rho.dim());
        const double root = std::sqrt(lam);
        for (std::size_t rix = 0; rix < dm.rho.dim(); ++rix)
            col[rix] = root * spec.eigenvectors(rix, i);
        basis.scaled.push_back(std::move(col));
    }
    basis.rank = basis.lambda.size();
    if (basis.rank == 0) throw std::invalid_argument("roof: density matrix has no spectral weight");
    return basis;
}

inline Decomposition decomposition_from_basis(const RoofBasis& basis, const Dims& dims,
                                              const ComplexMatrix& v) {
    constexpr double kDropProbability = 1e-14;
    Decomposition dec;
    for (std::size_t j = 0; j < v.rows; ++j) {
        std::vector<cplx> phi(dims.total(), cplx{0.0, 0.0});
        for (std::size_t i = 0; i < basis.rank; ++i) {
            const cplx vji = v(j, i);
            if (vji == cplx{0.0, 0.0}) continue;
            const std::vector<cplx>& col = basis.scaled[i];
            for (std::size_t k = 0; k < phi.size(); ++k) phi[k] += vji * col[k];
        }
        double p = 0.0;
        for (const cplx& z : phi) p += std::norm(z);
        if (p < kDropProbability) continue;
        dec.probs.push_back(p);
        dec.states.push_back(StateVector(dims, std::move(phi)));
    }
    return dec;
}

}  // namespace detail

/// Ensemble realized by an L x r isometry on the eigen-decomposition of rho;
/// rows with probability below 1e-14 are dropped.
inline Decomposition decomposition_from_isometry(const DensityMatrix& dm, const ComplexMatrix& v) {
    const detail::RoofBasis basis = detail::roof_basis(dm);
    if (v.cols != basis.rank)
        throw std::invalid_argument("decomposition_from_isometry: column count must equal rank(rho)");
    if (v.rows < v.cols)
        throw std::invalid_argument("decomposition_from_isometry: need at least rank(rho) rows");
    if (v.isometry_defect() > 1e-10)
        throw std::invalid_argument("decomposition_from_isometry: matrix is not an isometry");
    return detail::decomposition_from_basis(basis, dm.dims, v);
}

inline double roof_objective(const Decomposition& dec) {
    double s = 0.0;
    for (std::size_t j = 0; j < dec.probs.size(); ++j)
        s += dec.probs[j] * entanglement_pure(dec.states[j]).e;
    return s;
}

namespace detail {

/// Objective bookkeeping for one rho: with t^k[i][i'] =
/// sqrt(lambda_i lambda_i') <e_i| T_k |e_i'> (embedded generator k), the
/// ensemble average is C - sum_{j,k} m_jk^2 / p_j, where m_jk = v_j^dag t^k
/// v_j, p_j = v_j^dag diag(lambda) v_j and C = sum_mu 2(d_mu-1)/d_mu.  The
/// optimizer maximizes G = sum m^2/p.
struct RoofProblem {
    std::size_t rank = 0;
    std::vector<double> lambda;
    std::vector<ComplexMatrix> t;  // one r x r Hermitian matrix per generator
    double constant = 0.0;

    double gain(const ComplexMatrix& v) const {
        double total = 0.0;
        for (const ComplexMatrix& tk : t) {
            for (std::size_t j = 0; j < v.rows; ++j) {
                double p = 0.0;
                for (std::size_t i = 0; i < rank; ++i) p += lambda[i] * std::norm(v(j, i));
                if (p < 1e-14) continue;
                cplx m{0.0, 0.0};
                for (std::size_t i = 0; i < rank; ++i) {
                    cplx acc{0.0, 0.0};
                    for (std::size_t i2 = 0; i2 < rank; ++i2) acc += tk(i, i2) * v(j, i2);
                    m += std::conj(v(j, i)) * acc;
                }
                total += m.real() * m.real() / p;
            }
        }
        return total;
    }

    /// Euclidean gradient of the gain with respect to conj(V).
    ComplexMatrix gradient(const ComplexMatrix& v) const {
        ComplexMatrix grad(v.rows, rank);
        std::vector<double> p(v.rows, 0.0);
        for (std::size_t j = 0; j < v.rows; ++j)
            for (std::size_t i = 0; i < rank; ++i) p[j] += lambda[i] * std::norm(v(j, i));

        std::vector<double> ratio_sq(v.rows, 0.0);  // sum_k m_jk^2 / p_j^2
        for (const ComplexMatrix& tk : t) {
            for (std::size_t j = 0; j < v.rows; ++j) {
                if (p[j] < 1e-14) continue;
                std::vector<cplx> tv(rank, cplx{0.0, 0.0});
                for (std::size_t i = 0; i < rank; ++i)
                    for (std::size_t i2 = 0; i2 < rank; ++i2) tv[i] += tk(i, i2) * v(j, i2);
                cplx m{0.0, 0.0};
                for (std::size_t i = 0; i < rank; ++i) m += std::conj(v(j, i)) * tv[i];
                const double mj = m.real();
                ratio_sq[j] += mj * mj / (p[j] * p[j]);
                const double w = 2.0 * mj / p[j];
                for (std::size_t i = 0; i < rank; ++i) grad(j, i) += w * tv[i];
            }
        }
        for (std::size_t j = 0; j < v.rows; ++j)
            for (std::size_t i = 0; i < rank; ++i) grad(j, i) -= ratio_sq[j] * lambda[i] * v(j, i);
        return grad;
    }
};

inline RoofProblem build_problem(const DensityMatrix& dm, const RoofBasis& basis) {
    RoofProblem prob;
    prob.rank = basis.rank;
    prob.lambda = basis.lambda;
    prob.constant = max_entanglement(dm.dims);
    const Dims& dims = dm.dims;
    for (int mu = 0; mu < dims.count(); ++mu) {
        const GeneratorSet& gens = gellmann(dims.dim(mu));
        for (const DenseOperator& gen : gens.t) {
            // Columns T_k (sqrt(lambda_i)|e_i>) once, then all inner products.
            std::vector<std::vector<cplx>> applied;
            applied.reserve(basis.rank);
            for (std::size_t i = 0; i < basis.rank; ++i)
                applied.push_back(apply_local(dims, basis.scaled[i], gen, mu));
            ComplexMatrix tk(basis.rank, basis.rank);
            for (std::size_t i = 0; i < basis.rank; ++i)
                for (std::size_t i2 = 0; i2 < basis.rank; ++i2) {
                    cplx acc{0.0, 0.0};
                    for (std::size_t k = 0; k < basis.scaled[i].size(); ++k)
                        acc += std::conj(basis.scaled[i][k]) * applied[i2][k];
                    tk(i, i2) = acc;
                }
            prob.t.push_back(std::move(tk));
        }
    }
    return prob;
}

/// Projects onto the tangent space of the isometry manifold at v:
/// P(d) = d - v herm(v^dag d).  Stepping along the raw Euclidean gradient is
/// wrong here: its normal component induces a first-order tangent drift
/// under the Gram-Schmidt retraction.
inline ComplexMatrix tangent_project(const ComplexMatrix& v, const ComplexMatrix& d) {
    const std::size_t r = v.cols;
    ComplexMatrix vd(r, r);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) {
            cplx acc{0.0, 0.0};
            for (std::size_t j = 0; j < v.rows; ++j) acc += std::conj(v(j, a)) * d(j, b);
            vd(a, b) = acc;
        }
    ComplexMatrix out = d;
    for (std::size_t j = 0; j < v.rows; ++j)
        for (std::size_t b = 0; b < r; ++b) {
            cplx acc{0.0, 0.0};
            for (std::size_t a = 0; a < r; ++a)
                acc += v(j, a) * (0.5 * (vd(a, b) + std::conj(vd(b, a))));
            out(j, b) -= acc;
        }
    return out;
}

/// Re-orthonormalizes the columns (modified Gram-Schmidt).
inline ComplexMatrix retract(const ComplexMatrix& v) {
    ComplexMatrix q = v;
    for (std::size_t j = 0; j < q.cols; ++j) {
        for (std::size_t prev = 0; prev < j; ++prev) {
            cplx proj{0.0, 0.0};
            for (std::size_t i = 0; i < q.rows; ++i) proj += std::conj(q(i, prev)) * q(i, j);
            for (std::size_t i = 0; i < q.rows; ++i) q(i, j) -= proj * q(i, prev);
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < q.rows; ++i) nrm += std::norm(q(i, j));
        nrm = std::sqrt(nrm);
        if (nrm < 1e-14) throw std::runtime_error("roof: retraction lost rank");
        for (std::size_t i = 0; i < q.rows; ++i) q(i, j) /= nrm;
    }
    return q;
}

inline ComplexMatrix ascend(const RoofProblem& prob, ComplexMatrix v, int max_iters,
                            double step_tol) {
    double gain = prob.gain(v);
    double step = 0.25;
    int quiet_steps = 0;
    for (int iter = 0; iter < max_iters; ++iter) {
        const ComplexMatrix grad = tangent_project(v, prob.gradient(v));
        double gnorm = 0.0;
        for (const cplx& z : grad.a) gnorm += std::norm(z);
        gnorm = std::sqrt(gnorm);
        if (gnorm < 1e-12 * std::max(1.0, std::abs(gain))) break;

        bool accepted = false;
        for (int attempt = 0; attempt < 40; ++attempt) {
            ComplexMatrix trial = v;
            const double scale = step / gnorm;
            for (std::size_t i = 0; i < trial.a.size(); ++i) trial.a[i] += scale * grad.a[i];
            trial = retract(trial);
            const double trial_gain = prob.gain(trial);
            if (trial_gain > gain) {
                const double improvement = trial_gain - gain;
                v = std::move(trial);
                gain = trial_gain;
                step = std::min(step * 1.5, 4.0);
                accepted = true;
                quiet_steps = improvement < step_tol * std::max(1.0, std::abs(gain))
                                  ? quiet_steps + 1
                                  : 0;
                break;
            }
            step *= 0.5;
        }
        if (!accepted || quiet_steps >= 3) break;
    }
    return v;
}

}  // namespace detail

/// Minimizes the ensemble average over isometry-parameterized decompositions
/// with one deterministic eigen-ensemble start plus seeded random restarts.
/// The result is a heuristic upper bound; ties between restarts go to the
/// lowest restart index.
inline RoofResult minimize_roof(const DensityMatrix& dm, const RoofConfig& cfg) {
    if (cfg.restarts < 1) throw std::invalid_argument("minimize_roof: need restarts >= 1");
    const detail::RoofBasis basis = detail::roof_basis(dm);
    const std::size_t r = basis.rank;
    std::size_t ensemble_len;
    if (cfg.ensemble_len == 0) {
        ensemble_len = std::max<std::size_t>(r * r, 4);
    } else {
        ensemble_len = static_cast<std::size_t>(cfg.ensemble_len);
        if (ensemble_len < r)
            throw std::invalid_argument("minimize_roof: ensemble_len must be >= rank(rho)");
    }

    const detail::RoofProblem prob = detail::build_problem(dm, basis);

    RoofResult result;
    result.upper_bound = std::numeric_limits<double>::infinity();
    for (int restart = 0; restart < cfg.restarts; ++restart) {
        ComplexMatrix v0(ensemble_len, r);
        if (restart == 0) {
            for (std::size_t i = 0; i < r; ++i) v0(i, i) = 1.0;  // eigen-ensemble start
        } else {
            Rng rng(substream_seed(cfg.seed, static_cast<std::uint64_t>(restart)));
            v0 = random_isometry(ensemble_len, r, rng);
        }
        const ComplexMatrix v = detail::ascend(prob, std::move(v0), cfg.max_iters, cfg.step_tol);
        Decomposition dec = detail::decomposition_from_basis(basis, dm.dims, v);
        const double value = roof_objective(dec);
        result.restart_values.push_back(value);
        if (value < result.upper_bound) {
            result.upper_bound = value;
            result.best = std::move(dec);
            result.best_restart = restart;
        }
    }
    return result;
}

}  // namespace entdist
