// random.hpp — seeded deterministic sampling helpers (states, unitaries, isometries).
//
// Draws go through mt19937_64 with hand-rolled uniform/normal transforms, so a
// given seed reproduces the same sequence on every standard library.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "entdist/tensor.hpp"

namespace entdist {

/// Decorrelates derived seeds (splitmix64 finalizer).
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    cplx cnormal() { return cplx{normal(), normal()}; }

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline StateVector random_state(const Dims& dims, Rng& rng) {
    std::vector<cplx> amps(dims.total());
    for (cplx& z : amps) z = rng.cnormal();
    return StateVector(dims, std::move(amps));
}

inline std::vector<double> random_unit_vector(int n, Rng& rng) {
    std::vector<double> v(static_cast<std::size_t>(n));
    double s = 0.0;
    while (s == 0.0) {
        for (double& x : v) x = rng.normal();
        s = 0.0;
        for (double x : v) s += x * x;
    }
    const double inv = 1.0 / std::sqrt(s);
    for (double& x : v) x *= inv;
    return v;
}

/// Gram-Schmidt on the columns of a complex Ginibre matrix; the R-diagonal
/// phase fix makes the distribution Haar.
inline ComplexMatrix random_isometry(std::size_t rows, std::size_t cols, Rng& rng) {
    if (cols > rows) throw std::invalid_argument("random_isometry: need cols <= rows");
    ComplexMatrix v(rows, cols);
    for (cplx& z : v.a) z = rng.cnormal();
    for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t prev = 0; prev < j; ++prev) {
            cplx proj{0.0, 0.0};
            for (std::size_t i = 0; i < rows; ++i) proj += std::conj(v(i, prev)) * v(i, j);
            for (std::size_t i = 0; i < rows; ++i) v(i, j) -= proj * v(i, prev);
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < rows; ++i) nrm += std::norm(v(i, j));
        nrm = std::sqrt(nrm);
        if (nrm < 1e-14) throw std::runtime_error("random_isometry: rank deficiency");
        cplx phase = v(j, j) / std::abs(v(j, j));
        if (std::abs(v(j, j)) < 1e-300) phase = 1.0;
        const cplx scale = std::conj(phase) / nrm;
        for (std::size_t i = 0; i < rows; ++i) v(i, j) *= scale;
    }
    return v;
}

inline DenseOperator haar_unitary(int d, Rng& rng) {
    const ComplexMatrix m = random_isometry(static_cast<std::size_t>(d), static_cast<std::size_t>(d), rng);
    DenseOperator u(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < u.dim(); ++i)
        for (std::size_t j = 0; j < u.dim(); ++j) u(i, j) = m(i, j);
    return u;
}

inline std::vector<DenseOperator> random_local_unitaries(const Dims& dims, Rng& rng) {
    std::vector<DenseOperator> us;
    us.reserve(static_cast<std::size_t>(dims.count()));
    for (int mu = 0; mu < dims.count(); ++mu) us.push_back(haar_unitary(dims.dim(mu), rng));
    return us;
}

inline StateVector apply_local_unitaries(const StateVector& state,
                                         const std::vector<DenseOperator>& us) {
    if (static_cast<int>(us.size()) != state.dims().count())
        throw std::invalid_argument("apply_local_unitaries: need one unitary per subsystem");
    std::vector<cplx> amps = state.amplitudes();
    for (int mu = 0; mu < state.dims().count(); ++mu)
        amps = apply_local(state.dims(), amps, us[static_cast<std::size_t>(mu)], mu);
    return StateVector(state.dims(), std::move(amps));
}

}  // namespace entdist
