// helpers.hpp — shared fixtures and independent oracles for the test suites.
//
// Every oracle here recomputes its target through a different route than the
// library (explicit Kronecker chains, full density matrices, binomial sums,
// concurrence), so the main implementations are checked against independent
// arithmetic.

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "entdist/entdist.hpp"

namespace testutil {

using namespace entdist;

inline DenseOperator pauli_x() {
    DenseOperator p(2);
    p(0, 1) = 1.0;
    p(1, 0) = 1.0;
    return p;
}
inline DenseOperator pauli_y() {
    DenseOperator p(2);
    p(0, 1) = cplx{0.0, -1.0};
    p(1, 0) = cplx{0.0, 1.0};
    return p;
}
inline DenseOperator pauli_z() {
    DenseOperator p(2);
    p(0, 0) = 1.0;
    p(1, 1) = -1.0;
    return p;
}

/// The eight standard Gell-Mann matrices lambda_1..lambda_8.
inline std::vector<DenseOperator> standard_gellmann3() {
    std::vector<DenseOperator> l(8, DenseOperator(3));
    l[0](0, 1) = 1.0; l[0](1, 0) = 1.0;
    l[1](0, 1) = cplx{0.0, -1.0}; l[1](1, 0) = cplx{0.0, 1.0};
    l[2](0, 0) = 1.0; l[2](1, 1) = -1.0;
    l[3](0, 2) = 1.0; l[3](2, 0) = 1.0;
    l[4](0, 2) = cplx{0.0, -1.0}; l[4](2, 0) = cplx{0.0, 1.0};
    l[5](1, 2) = 1.0; l[5](2, 1) = 1.0;
    l[6](1, 2) = cplx{0.0, -1.0}; l[6](2, 1) = cplx{0.0, 1.0};
    const double s = 1.0 / std::sqrt(3.0);
    l[7](0, 0) = s; l[7](1, 1) = s; l[7](2, 2) = -2.0 * s;
    return l;
}

inline double frob_dist(const DenseOperator& a, const DenseOperator& b) {
    return (a - b).frobenius_norm();
}

/// Oracle for embed_local: the explicit Kronecker chain with subsystem 0 as
/// the least significant factor, i.e. I_{d_{M-1}} (x) ... (x) op (x) ... I_{d_0}.
inline DenseOperator embed_via_kron(const DenseOperator& op, int mu, const Dims& dims) {
    DenseOperator acc = DenseOperator::identity(1);
    for (int nu = dims.count() - 1; nu >= 0; --nu) {
        const DenseOperator factor =
            (nu == mu) ? op : DenseOperator::identity(static_cast<std::size_t>(dims.dim(nu)));
        acc = kron(acc, factor);
    }
    return acc;
}

/// Oracle for partial_trace: builds the full projector |psi><psi| and sums
/// matrix elements digit by digit.
inline DenseOperator partial_trace_bruteforce(const StateVector& state,
                                              const std::vector<int>& keep) {
    const Dims& dims = state.dims();
    std::vector<int> ks = keep;
    std::sort(ks.begin(), ks.end());
    std::vector<int> ts;
    for (int mu = 0; mu < dims.count(); ++mu)
        if (!std::binary_search(ks.begin(), ks.end(), mu)) ts.push_back(mu);

    const std::size_t d = dims.total();
    std::vector<std::vector<cplx>> rho_full(d, std::vector<cplx>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) rho_full[i][j] = state[i] * std::conj(state[j]);

    std::size_t dk = 1;
    for (int mu : ks) dk *= static_cast<std::size_t>(dims.dim(mu));
    std::size_t dt = 1;
    for (int mu : ts) dt *= static_cast<std::size_t>(dims.dim(mu));

    auto full_index = [&](std::size_t kept, std::size_t traced) {
        std::size_t idx = 0;
        std::size_t rest = kept;
        for (int mu : ks) {
            idx += (rest % static_cast<std::size_t>(dims.dim(mu))) * dims.stride(mu);
            rest /= static_cast<std::size_t>(dims.dim(mu));
        }
        rest = traced;
        for (int mu : ts) {
            idx += (rest % static_cast<std::size_t>(dims.dim(mu))) * dims.stride(mu);
            rest /= static_cast<std::size_t>(dims.dim(mu));
        }
        return idx;
    };

    DenseOperator rho(dk);
    for (std::size_t i = 0; i < dk; ++i)
        for (std::size_t j = 0; j < dk; ++j)
            for (std::size_t t = 0; t < dt; ++t)
                rho(i, j) += rho_full[full_index(i, t)][full_index(j, t)];
    return rho;
}

/// Oracle for the entangling unitary behind the BRS family, built as an
/// explicit product of full-size matrices: prod_{mu=0}^{M-2}
/// (I + alpha P1^{mu} P0^{mu+1}) with alpha = e^{-i phi} - 1, where P1
/// projects digit mu onto 1 and P0 projects digit mu+1 onto 0 (the "01"
/// substring convention of count_01_pairs).
inline DenseOperator brs_entangling_unitary(int m, double phi) {
    const Dims dims = Dims::qubits(m);
    const cplx alpha = std::polar(1.0, -phi) - 1.0;
    DenseOperator p0(2), p1(2);
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    DenseOperator u = DenseOperator::identity(dims.total());
    for (int mu = 0; mu + 1 < m; ++mu) {
        DenseOperator pair = embed_via_kron(p1, mu, dims) * embed_via_kron(p0, mu + 1, dims);
        pair *= alpha;
        DenseOperator factor = DenseOperator::identity(dims.total());
        factor += pair;
        u = u * factor;
    }
    return u;
}

/// The eigenvalue sum lambda = sum_{j=0}^{n} binom(n, j) alpha^j evaluated
/// term by term (no closed form).
inline cplx brs_lambda_binomial(int n, double phi) {
    const cplx alpha = std::polar(1.0, -phi) - 1.0;
    cplx sum{0.0, 0.0};
    cplx alpha_pow{1.0, 0.0};
    double binom = 1.0;
    for (int j = 0; j <= n; ++j) {
        sum += binom * alpha_pow;
        alpha_pow *= alpha;
        binom = binom * (n - j) / (j + 1);
    }
    return sum;
}

inline StateVector random_product_state(const Dims& dims, Rng& rng) {
    StateVector acc = random_state(Dims({dims.dim(0)}), rng);
    for (int mu = 1; mu < dims.count(); ++mu)
        acc = tensor_product(acc, random_state(Dims({dims.dim(mu)}), rng));
    return acc;
}

/// Random mixed state as a weighted mixture of `terms` random pure states.
inline DensityMatrix random_density(const Dims& dims, int terms, Rng& rng) {
    std::vector<double> w(static_cast<std::size_t>(terms));
    double sum = 0.0;
    for (double& x : w) {
        x = rng.uniform() + 1e-3;
        sum += x;
    }
    DenseOperator rho(dims.total());
    for (int t = 0; t < terms; ++t) {
        const StateVector psi = random_state(dims, rng);
        const double p = w[static_cast<std::size_t>(t)] / sum;
        for (std::size_t i = 0; i < psi.size(); ++i)
            for (std::size_t j = 0; j < psi.size(); ++j)
                rho(i, j) += p * psi[i] * std::conj(psi[j]);
    }
    return DensityMatrix(dims, std::move(rho));
}

/// Wootters concurrence of a two-qubit density matrix: with
/// rho~ = (sy (x) sy) conj(rho) (sy (x) sy), C = max(0, l1 - l2 - l3 - l4)
/// where l_i are the descending square roots of the eigenvalues of
/// sqrt(rho) rho~ sqrt(rho).
inline double wootters_concurrence(const DensityMatrix& dm) {
    const DenseOperator yy = kron(pauli_y(), pauli_y());
    DenseOperator rho_conj(4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) rho_conj(i, j) = std::conj(dm.rho(i, j));
    const DenseOperator rho_tilde = yy * rho_conj * yy;

    const HermitianSpectrum spec = hermitian_eig(dm.rho);
    DenseOperator sqrt_rho(4);
    for (std::size_t a = 0; a < 4; ++a) {
        const double lam = std::max(spec.eigenvalues[a], 0.0);
        const double root = std::sqrt(lam);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                sqrt_rho(i, j) += root * spec.eigenvectors(i, a) * std::conj(spec.eigenvectors(j, a));
    }
    const HermitianSpectrum hs = hermitian_eig(sqrt_rho * rho_tilde * sqrt_rho);
    std::array<double, 4> l{};
    for (std::size_t i = 0; i < 4; ++i) l[i] = std::sqrt(std::max(hs.eigenvalues[i], 0.0));
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

// Closed-form measure values for the analytic families.
inline double brs2_closed(double phi) {
    const double s = std::sin(phi / 2.0);
    return 2.0 * s * s;
}
inline double brs3_closed(double phi) {
    const double s = std::sin(phi / 2.0), c = std::cos(phi / 2.0);
    return s * s * (3.0 + c * c);
}
inline double ghzls_closed(int m, double theta) {
    const double s = std::sin(2.0 * theta);
    return m * s * s;
}
inline double three_qubit_closed(double gamma, double tau) {
    const double st = std::sin(2.0 * tau), sg = std::sin(2.0 * gamma), ct = std::cos(2.0 * tau);
    return 2.0 * st * st + 3.0 * sg * sg * ct * ct;
}
inline double hybrid_closed(double theta) {
    const double s = std::sin(2.0 * theta);
    return 2.0 * s * s;
}
inline double qutrit_ghz_closed(int m, double theta, double phi) {
    const double s2 = std::sin(theta) * std::sin(theta);
    return 0.25 * m * s2 * (9.0 + 7.0 * std::cos(2.0 * theta) - 2.0 * s2 * std::cos(4.0 * phi));
}

inline constexpr double kPi = std::numbers::pi;

}  // namespace testutil
