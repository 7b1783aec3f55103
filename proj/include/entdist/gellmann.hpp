// gellmann.hpp — generalized Gell-Mann generators of su(d) and their identities.
//
// With E_{j,k} the matrix unit (1-based j,k), the d^2-1 generators are
//   symmetric      E_{j,k} + E_{k,j}         at l = 2(k-j) + (j-1)(2d-j) - 1,
//   antisymmetric  -i (E_{j,k} - E_{k,j})    at l = 2(k-j) + (j-1)(2d-j),
//   diagonal       [sum_{j<=k} E_{j,j} - k E_{k+1,k+1}] sqrt(2/(k(k+1)))
//                                            at l = d(d-1) + k,
// for j = 1..d-1, k = j+1..d (off-diagonal) and k = 1..d-1 (diagonal).
// For d = 2 this yields (sigma_x, sigma_y, sigma_z); for d = 3 the standard
// Gell-Mann matrices (in the index order above).

#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "entdist/eig.hpp"
#include "entdist/random.hpp"
#include "entdist/tensor.hpp"

namespace entdist {

struct GeneratorSet {
    int d = 0;
    std::vector<DenseOperator> t;  // t[l-1] holds T_l, l = 1..d^2-1

    const DenseOperator& generator(int l) const {  // 1-based index
        return t.at(static_cast<std::size_t>(l - 1));
    }
    int count() const { return d * d - 1; }
};

namespace detail {

inline GeneratorSet build_gellmann(int d) {
    GeneratorSet g;
    g.d = d;
    const int count = d * d - 1;
    g.t.assign(static_cast<std::size_t>(count), DenseOperator(static_cast<std::size_t>(d)));
    std::vector<bool> used(static_cast<std::size_t>(count), false);

    auto place = [&](int l, DenseOperator op) {
        if (l < 1 || l > count || used[static_cast<std::size_t>(l - 1)])
            throw std::logic_error("gellmann: index map is not a bijection");
        used[static_cast<std::size_t>(l - 1)] = true;
        g.t[static_cast<std::size_t>(l - 1)] = std::move(op);
    };

    for (int j = 1; j <= d - 1; ++j) {
        for (int k = j + 1; k <= d; ++k) {
            const int base = 2 * (k - j) + (j - 1) * (2 * d - j);
            DenseOperator sym(static_cast<std::size_t>(d));
            sym(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(k - 1)) = 1.0;
            sym(static_cast<std::size_t>(k - 1), static_cast<std::size_t>(j - 1)) = 1.0;
            place(base - 1, std::move(sym));

            DenseOperator asym(static_cast<std::size_t>(d));
            asym(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(k - 1)) = cplx{0.0, -1.0};
            asym(static_cast<std::size_t>(k - 1), static_cast<std::size_t>(j - 1)) = cplx{0.0, 1.0};
            place(base, std::move(asym));
        }
    }
    for (int k = 1; k <= d - 1; ++k) {
        const double scale = std::sqrt(2.0 / (static_cast<double>(k) * (k + 1)));
        DenseOperator diag(static_cast<std::size_t>(d));
        for (int j = 1; j <= k; ++j) diag(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(j - 1)) = scale;
        diag(static_cast<std::size_t>(k), static_cast<std::size_t>(k)) = -static_cast<double>(k) * scale;
        place(d * (d - 1) + k, std::move(diag));
    }

    for (bool u : used)
        if (!u) throw std::logic_error("gellmann: index map left a gap");
    return g;
}

}  // namespace detail

/// Generator set for one subsystem dimension; built once per d and cached.
inline const GeneratorSet& gellmann(int d) {
    if (d < 2) throw std::invalid_argument("gellmann: need d >= 2");
    if (d > 64) throw std::invalid_argument("gellmann: d > 64 not supported");
    static std::mutex mtx;
    static std::map<int, std::unique_ptr<const GeneratorSet>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(d);
    if (it == cache.end())
        it = cache.emplace(d, std::make_unique<const GeneratorSet>(detail::build_gellmann(d))).first;
    return *it->second;
}

struct IdentityReport {
    // ||sum_k T_k^2 - (2(d^2-1)/d) I||_F
    double casimir_residual = 0.0;
    // max over probes of |sum_k <T_k>^2 - 2(d-1)/d|
    double purity_residual = 0.0;
    // max over random local unitaries of |sum_k <U^dag T_k U>^2 - sum_k <T_k>^2|
    double frame_residual = 0.0;
};

/// Checks the Casimir, purity-sum and frame-invariance identities on the
/// given single-qudit probe states.  Unitaries for the frame check are drawn
/// deterministically from `seed`.
inline IdentityReport verify_identities(const GeneratorSet& g, const std::vector<StateVector>& probes,
                                        int num_unitaries = 100, std::uint64_t seed = 0x5eedULL) {
    const int d = g.d;
    IdentityReport rep;

    DenseOperator casimir(static_cast<std::size_t>(d));
    for (const DenseOperator& t : g.t) casimir += t * t;
    casimir -= cplx{2.0 * (d * d - 1) / d, 0.0} * DenseOperator::identity(static_cast<std::size_t>(d));
    rep.casimir_residual = casimir.frobenius_norm();

    const double target = 2.0 * (d - 1) / d;
    auto moment_sum = [&g](const StateVector& s) {
        double acc = 0.0;
        for (const DenseOperator& t : g.t) {
            const double m = expectation(s, t).real();
            acc += m * m;
        }
        return acc;
    };

    for (const StateVector& probe : probes) {
        if (probe.dims().count() != 1 || probe.dims().dim(0) != d)
            throw std::invalid_argument("verify_identities: probe dimension mismatch");
        rep.purity_residual = std::max(rep.purity_residual, std::abs(moment_sum(probe) - target));
    }

    if (!probes.empty() && num_unitaries > 0) {
        Rng rng(seed);
        for (int i = 0; i < num_unitaries; ++i) {
            const StateVector& probe = probes[static_cast<std::size_t>(i) % probes.size()];
            const DenseOperator u = haar_unitary(d, rng);
            const StateVector rotated = apply_local_unitary(probe, u, 0);
            rep.frame_residual =
                std::max(rep.frame_residual, std::abs(moment_sum(rotated) - moment_sum(probe)));
        }
    }
    return rep;
}

/// Largest spectral radius over the set; equals sqrt(2(d-1)/d).
inline double max_generator_eigenvalue(const GeneratorSet& g) {
    double best = 0.0;
    for (const DenseOperator& t : g.t) {
        const HermitianSpectrum spec = hermitian_eig(t);
        for (double lam : spec.eigenvalues) best = std::max(best, std::abs(lam));
    }
    return best;
}

}  // namespace entdist
