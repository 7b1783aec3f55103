// measure.hpp — entanglement measure and Fubini-Study metric machinery.
//
// For a normalized state |s> of an M-qudit hybrid system, the per-subsystem
// covariance matrix of the su(d_mu) generators is
//   A_mu[i][j] = <s| T_i T_j |s> - <s| T_i |s><s| T_j |s>,
// and the entanglement measure is the trace excess
//   E(|s>) = sum_mu [ tr(A_mu) - 2(d_mu - 1) ]
//          = sum_mu [ 2(d_mu - 1)/d_mu - sum_k <s| T_k |s>^2 ].
// Both routes are evaluated and cross-checked on every call.  E vanishes on
// product states, is invariant under local unitaries, and is bounded by
// sum_mu 2(d_mu - 1)/d_mu.
//
// Restricting the Fubini-Study metric to local directions v_mu gives
//   g[mu][nu](v) = <(v.T)_mu (v.T)_nu> - <(v.T)_mu><(v.T)_nu>.
// For qubit systems the trace of g is minimized by aligning each v_mu with
// the Bloch vector of qubit mu, and the metric at that minimum (the
// entanglement metric) has trace equal to E.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "entdist/eig.hpp"
#include "entdist/gellmann.hpp"
#include "entdist/random.hpp"
#include "entdist/tensor.hpp"

namespace entdist {

/// Generator covariance matrix of one subsystem; (d_mu^2-1) x (d_mu^2-1),
/// Hermitian and positive semidefinite, with 2(d-1) <= tr(A) <= 2(d^2-1)/d.
struct LocalCovariance {
    int mu = 0;
    DenseOperator a;
};

/// One real unit vector per subsystem, v_mu in R^{d_mu^2 - 1}.
struct DirectionSet {
    std::vector<std::vector<double>> v;
};

/// Fubini-Study metric evaluated at a fixed direction set: an M x M real
/// symmetric PSD matrix, stored row-major; row/column indices label the
/// per-subsystem coordinates.
struct FsMetric {
    int m = 0;
    std::vector<double> g;
    DirectionSet directions;

    double at(int mu, int nu) const {
        return g[static_cast<std::size_t>(mu) * static_cast<std::size_t>(m) +
                 static_cast<std::size_t>(nu)];
    }
    double trace() const {
        double t = 0.0;
        for (int mu = 0; mu < m; ++mu) t += at(mu, mu);
        return t;
    }
    DenseOperator as_operator() const {
        DenseOperator op(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                op(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = at(i, j);
        return op;
    }
};

struct EntanglementResult {
    double e = 0.0;
    std::vector<double> per_subsystem;  // 2(d_mu-1)/d_mu - sum_k <T_k>^2
    double e_max = 0.0;                 // sum_mu 2(d_mu-1)/d_mu
};

struct DistanceBoundReport {
    int trials = 0;
    double e = 0.0;
    double min_trace = 0.0;
    bool bound_satisfied = false;
};

/// Largest attainable measure for the given dimensions: sum_mu 2(d_mu-1)/d_mu.
inline double max_entanglement(const Dims& dims) {
    double s = 0.0;
    for (int mu = 0; mu < dims.count(); ++mu) {
        const double d = dims.dim(mu);
        s += 2.0 * (d - 1.0) / d;
    }
    return s;
}

namespace detail {

inline void require_normalized(const StateVector& state, const char* who) {
    if (std::abs(state.norm() - 1.0) > 1e-9)
        throw std::invalid_argument(std::string(who) + ": state is not normalized");
}

/// T_k|s> for every generator of subsystem mu, plus the first moments <T_k>.
struct LocalMoments {
    std::vector<std::vector<cplx>> applied;
    std::vector<double> mean;
};

inline LocalMoments local_moments(const StateVector& state, int mu) {
    const GeneratorSet& gens = gellmann(state.dims().dim(mu));
    LocalMoments lm;
    lm.applied.reserve(gens.t.size());
    lm.mean.reserve(gens.t.size());
    for (const DenseOperator& t : gens.t) {
        std::vector<cplx> phi = apply_local(state.dims(), state.amplitudes(), t, mu);
        cplx mean{0.0, 0.0};
        for (std::size_t k = 0; k < phi.size(); ++k) mean += std::conj(state[k]) * phi[k];
        lm.mean.push_back(mean.real());
        lm.applied.push_back(std::move(phi));
    }
    return lm;
}

inline cplx dot(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx s{0.0, 0.0};
    for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * b[k];
    return s;
}

}  // namespace detail

inline LocalCovariance covariance_matrix(const StateVector& state, int mu) {
    if (mu < 0 || mu >= state.dims().count())
        throw std::invalid_argument("covariance_matrix: mu out of range");
    detail::require_normalized(state, "covariance_matrix");
    const detail::LocalMoments lm = detail::local_moments(state, mu);
    const std::size_t n = lm.applied.size();
    LocalCovariance cov;
    cov.mu = mu;
    cov.a = DenseOperator(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            // <T_i T_j> = <T_i s | T_j s> by hermiticity of the generators.
            const cplx second = detail::dot(lm.applied[i], lm.applied[j]);
            const cplx value = second - lm.mean[i] * lm.mean[j];
            cov.a(i, j) = value;
            cov.a(j, i) = std::conj(value);
        }
    }
    return cov;
}

/// Entanglement measure of a pure state.  Evaluates both the trace-excess
/// form and the moment-sum form and insists they agree to 1e-10; the
/// per-subsystem contributions returned are the moment-sum terms.
inline EntanglementResult entanglement_pure(const StateVector& state) {
    detail::require_normalized(state, "entanglement_pure");
    EntanglementResult res;
    res.e_max = max_entanglement(state.dims());
    res.per_subsystem.reserve(static_cast<std::size_t>(state.dims().count()));
    double form_a = 0.0;
    for (int mu = 0; mu < state.dims().count(); ++mu) {
        const double d = state.dims().dim(mu);
        const detail::LocalMoments lm = detail::local_moments(state, mu);
        double trace_a = 0.0;
        double moment_sq = 0.0;
        for (std::size_t k = 0; k < lm.applied.size(); ++k) {
            trace_a += detail::dot(lm.applied[k], lm.applied[k]).real() - lm.mean[k] * lm.mean[k];
            moment_sq += lm.mean[k] * lm.mean[k];
        }
        const double contrib_a = trace_a - 2.0 * (d - 1.0);
        const double contrib_b = 2.0 * (d - 1.0) / d - moment_sq;
        if (std::abs(contrib_a - contrib_b) > 1e-10)
            throw std::runtime_error("entanglement_pure: dual-form cross-check failed");
        form_a += contrib_a;
        res.per_subsystem.push_back(contrib_b);
        res.e += contrib_b;
    }
    if (std::abs(form_a - res.e) > 1e-10)
        throw std::runtime_error("entanglement_pure: dual-form cross-check failed");
    return res;
}

/// Per-qubit 3-vectors w_nu built from the amplitude sums
///   w_minus = sum_k delta(n_nu(k), 0) conj(c_{k+2^nu}) c_k,
///   w_3     = sum_k (-1)^{n_nu(k)} |c_k|^2,
/// as w_nu = (2 Re w_minus, -2 Im w_minus, w_3).  Gives the closed form
/// E = M - sum_nu ||w_nu||^2 without touching the generator machinery.
inline std::vector<std::array<double, 3>> brs_w_vectors(const StateVector& state) {
    const Dims& dims = state.dims();
    if (!dims.all_qubits()) throw std::invalid_argument("brs_w_vectors: all subsystems must be qubits");
    const int m = dims.count();
    std::vector<std::array<double, 3>> w(static_cast<std::size_t>(m));
    for (int nu = 0; nu < m; ++nu) {
        const std::size_t step = std::size_t{1} << nu;
        cplx w_minus{0.0, 0.0};
        double w3 = 0.0;
        for (std::size_t k = 0; k < state.size(); ++k) {
            if ((k >> nu) & 1u) {
                w3 -= std::norm(state[k]);
            } else {
                w_minus += std::conj(state[k + step]) * state[k];
                w3 += std::norm(state[k]);
            }
        }
        w[static_cast<std::size_t>(nu)] = {2.0 * w_minus.real(), -2.0 * w_minus.imag(), w3};
    }
    return w;
}

namespace detail {

inline void require_directions(const StateVector& state, const DirectionSet& dirs,
                               const char* who) {
    const Dims& dims = state.dims();
    if (static_cast<int>(dirs.v.size()) != dims.count())
        throw std::invalid_argument(std::string(who) + ": need one direction per subsystem");
    for (int mu = 0; mu < dims.count(); ++mu) {
        const std::vector<double>& v = dirs.v[static_cast<std::size_t>(mu)];
        const int want = dims.dim(mu) * dims.dim(mu) - 1;
        if (static_cast<int>(v.size()) != want)
            throw std::invalid_argument(std::string(who) + ": direction has wrong length");
        double n2 = 0.0;
        for (double x : v) n2 += x * x;
        if (std::abs(std::sqrt(n2) - 1.0) > 1e-9)
            throw std::invalid_argument(std::string(who) + ": direction is not a unit vector");
    }
}

}  // namespace detail

/// Fubini-Study metric g(v) at the given unit directions.  Off-diagonal
/// entries use the plain product <(v.T)_mu (v.T)_nu>, which is real because
/// operators embedded on distinct subsystems commute; residual imaginary
/// parts beyond 1e-10 are treated as a numerical fault.
inline FsMetric fs_metric(const StateVector& state, const DirectionSet& dirs) {
    detail::require_normalized(state, "fs_metric");
    detail::require_directions(state, dirs, "fs_metric");
    const Dims& dims = state.dims();
    const int m = dims.count();

    std::vector<std::vector<cplx>> applied(static_cast<std::size_t>(m));
    std::vector<double> mean(static_cast<std::size_t>(m));
    for (int mu = 0; mu < m; ++mu) {
        const int d = dims.dim(mu);
        const GeneratorSet& gens = gellmann(d);
        DenseOperator local(static_cast<std::size_t>(d));
        for (int k = 0; k < gens.count(); ++k) {
            const double vk = dirs.v[static_cast<std::size_t>(mu)][static_cast<std::size_t>(k)];
            if (vk == 0.0) continue;
            DenseOperator term = gens.generator(k + 1);
            term *= cplx{vk, 0.0};
            local += term;
        }
        applied[static_cast<std::size_t>(mu)] = apply_local(dims, state.amplitudes(), local, mu);
        cplx mn{0.0, 0.0};
        for (std::size_t k = 0; k < state.size(); ++k)
            mn += std::conj(state[k]) * applied[static_cast<std::size_t>(mu)][k];
        if (std::abs(mn.imag()) > 1e-10)
            throw std::runtime_error("fs_metric: first moment is not real");
        mean[static_cast<std::size_t>(mu)] = mn.real();
    }

    FsMetric metric;
    metric.m = m;
    metric.directions = dirs;
    metric.g.assign(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0.0);
    for (int mu = 0; mu < m; ++mu) {
        for (int nu = mu; nu < m; ++nu) {
            const cplx second = detail::dot(applied[static_cast<std::size_t>(mu)],
                                            applied[static_cast<std::size_t>(nu)]);
            if (std::abs(second.imag()) > 1e-10)
                throw std::runtime_error("fs_metric: cross moment is not real");
            const double value = second.real() -
                                 mean[static_cast<std::size_t>(mu)] * mean[static_cast<std::size_t>(nu)];
            metric.g[static_cast<std::size_t>(mu) * static_cast<std::size_t>(m) +
                     static_cast<std::size_t>(nu)] = value;
            metric.g[static_cast<std::size_t>(nu) * static_cast<std::size_t>(m) +
                     static_cast<std::size_t>(mu)] = value;
        }
    }
    return metric;
}

/// Trace-minimizing directions for an all-qubit state: each v_mu is the
/// normalized Bloch vector (<sigma_1>, <sigma_2>, <sigma_3>).  Where the
/// Bloch vector vanishes (||b|| <= 1e-8) the minimizer is not unique and the
/// deterministic fallback (0, 0, 1) is used; pass explicit directions to
/// fs_metric to realize a different member of the degenerate family.
inline DirectionSet trace_min_directions(const StateVector& state) {
    const Dims& dims = state.dims();
    if (!dims.all_qubits())
        throw std::invalid_argument("trace_min_directions: all subsystems must be qubits");
    detail::require_normalized(state, "trace_min_directions");
    DirectionSet dirs;
    dirs.v.reserve(static_cast<std::size_t>(dims.count()));
    for (int mu = 0; mu < dims.count(); ++mu) {
        const detail::LocalMoments lm = detail::local_moments(state, mu);
        const double norm = std::sqrt(lm.mean[0] * lm.mean[0] + lm.mean[1] * lm.mean[1] +
                                      lm.mean[2] * lm.mean[2]);
        if (norm > 1e-8) {
            dirs.v.push_back({lm.mean[0] / norm, lm.mean[1] / norm, lm.mean[2] / norm});
        } else {
            dirs.v.push_back({0.0, 0.0, 1.0});
        }
    }
    return dirs;
}

/// Entanglement metric: the Fubini-Study metric at the trace-minimizing
/// directions.  tr(g~) equals the entanglement measure.
inline FsMetric entanglement_metric(const StateVector& state) {
    return fs_metric(state, trace_min_directions(state));
}

inline std::vector<double> em_eigenvalues(const StateVector& state) {
    return hermitian_eig(entanglement_metric(state).as_operator()).eigenvalues;
}

/// Samples random direction sets and checks the distance bound
/// tr(g(v)) >= E - 1e-9 on every draw.
inline DistanceBoundReport distance_bound_check(const StateVector& state, int trials,
                                                std::uint64_t seed) {
    const Dims& dims = state.dims();
    if (!dims.all_qubits())
        throw std::invalid_argument("distance_bound_check: all subsystems must be qubits");
    DistanceBoundReport rep;
    rep.trials = trials;
    rep.e = entanglement_pure(state).e;
    rep.min_trace = std::numeric_limits<double>::infinity();
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        DirectionSet dirs;
        dirs.v.reserve(static_cast<std::size_t>(dims.count()));
        for (int mu = 0; mu < dims.count(); ++mu) dirs.v.push_back(random_unit_vector(3, rng));
        rep.min_trace = std::min(rep.min_trace, fs_metric(state, dirs).trace());
    }
    if (trials == 0) rep.min_trace = rep.e;
    rep.bound_satisfied = rep.min_trace >= rep.e - 1e-9;
    return rep;
}

/// Von Neumann entropy -sum_i lambda_i log2 lambda_i of the reduced density
/// matrix on `keep`, with 0 log 0 := 0.
inline double von_neumann_entropy(const StateVector& state, const std::vector<int>& keep) {
    const DenseOperator rho = partial_trace(state, keep);
    const HermitianSpectrum spec = hermitian_eig(rho);
    double s = 0.0;
    for (double lam : spec.eigenvalues) {
        if (lam > 1e-15) s -= lam * std::log2(lam);
    }
    return s;
}

}  // namespace entdist
