// families.hpp — analytic multi-qudit state families used as library features
// and as closed-form references in the tests.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "entdist/tensor.hpp"

namespace entdist {

/// Number of adjacent digit pairs (n_{mu+1}, n_mu) = (0, 1) in the M-bit
/// expansion of k, i.e. "01" substrings of the ket string |n_{M-1} ... n_0>
/// read left to right, over the open chain mu = 0..M-2.
inline int count_01_pairs(std::size_t k, int m) {
    int n = 0;
    for (int mu = 0; mu + 1 < m; ++mu) {
        const bool lo = (k >> mu) & 1u;
        const bool hi = (k >> (mu + 1)) & 1u;
        if (lo && !hi) ++n;
    }
    return n;
}

/// Briegel-Raussendorf state |r, phi>_m: the uniform superposition with each
/// basis amplitude phased by exp(-i phi n(k)), n(k) = count_01_pairs(k, m).
/// phi = 0 (mod 2 pi) is fully separable; phi = pi is maximally entangled.
inline StateVector brs(int m, double phi) {
    if (m < 2 || m > 14) throw std::invalid_argument("brs: need 2 <= m <= 14");
    const std::size_t dim = std::size_t{1} << m;
    const double scale = std::pow(2.0, -0.5 * m);
    std::vector<cplx> amps(dim);
    for (std::size_t k = 0; k < dim; ++k)
        amps[k] = scale * std::polar(1.0, -phi * count_01_pairs(k, m));
    return StateVector(Dims::qubits(m), std::move(amps));
}

/// cos(theta)|0...0> + sin(theta) e^{i phase} |1...1> on m qubits.
inline StateVector ghzls(int m, double theta, double phase = 0.0) {
    if (m < 2) throw std::invalid_argument("ghzls: need m >= 2");
    const std::size_t dim = std::size_t{1} << m;
    std::vector<cplx> amps(dim, cplx{0.0, 0.0});
    amps[0] = std::cos(theta);
    amps[dim - 1] = std::polar(std::sin(theta), phase);
    return StateVector(Dims::qubits(m), std::move(amps));
}

/// Three-qubit two-parameter family
///   cos(g)|0>[cos(t)|00> + sin(t)|11>] + sin(g)|1>[sin(t)|00> + cos(t)|11>],
/// with the leftmost ket factor mapped to qubit index 2.
inline StateVector three_qubit(double gamma, double tau) {
    std::vector<cplx> amps(8, cplx{0.0, 0.0});
    amps[0] = std::cos(gamma) * std::cos(tau);  // |0>|00>
    amps[3] = std::cos(gamma) * std::sin(tau);  // |0>|11>
    amps[4] = std::sin(gamma) * std::sin(tau);  // |1>|00>
    amps[7] = std::sin(gamma) * std::cos(tau);  // |1>|11>
    return StateVector(Dims::qubits(3), std::move(amps));
}

/// Qubit (x) qutrit family cos(theta)|+,0> + sin(theta)|-,2> on dims [2,3];
/// the basis labels +/- map to qubit indices 0/1.
inline StateVector hybrid_qubit_qutrit(double theta) {
    std::vector<cplx> amps(6, cplx{0.0, 0.0});
    amps[0] = std::cos(theta);  // qubit 0, qutrit 0
    amps[5] = std::sin(theta);  // qubit 1, qutrit 2
    return StateVector(Dims({2, 3}), std::move(amps));
}

/// M-qutrit two-parameter family
///   sin(theta)cos(phi)|0..0> + sin(theta)sin(phi)|1..1> + cos(theta)|2..2>.
inline StateVector qutrit_ghz(int m, double theta, double phi) {
    if (m < 2) throw std::invalid_argument("qutrit_ghz: need m >= 2");
    const Dims dims = Dims::qudits(m, 3);
    std::vector<cplx> amps(dims.total(), cplx{0.0, 0.0});
    std::size_t ones = 0, twos = 0;
    for (int mu = 0; mu < m; ++mu) {
        ones += dims.stride(mu);
        twos += 2 * dims.stride(mu);
    }
    amps[0] = std::sin(theta) * std::cos(phi);
    amps[ones] = std::sin(theta) * std::sin(phi);
    amps[twos] = std::cos(theta);
    return StateVector(dims, std::move(amps));
}

enum class Family { kBrs, kGhzls, kThreeQubit, kHybrid23, kQutritGhz };

/// One family member: the label plus its parameter record (radians; unused
/// parameters are ignored by the constructor for that family).
struct FamilyState {
    Family family = Family::kBrs;
    int m = 2;
    double phi = 0.0;
    double theta = 0.0;
    double gamma = 0.0;
    double tau = 0.0;
    double phase = 0.0;
};

inline StateVector make_state(const FamilyState& f) {
    switch (f.family) {
        case Family::kBrs: return brs(f.m, f.phi);
        case Family::kGhzls: return ghzls(f.m, f.theta, f.phase);
        case Family::kThreeQubit: return three_qubit(f.gamma, f.tau);
        case Family::kHybrid23: return hybrid_qubit_qutrit(f.theta);
        case Family::kQutritGhz: return qutrit_ghz(f.m, f.theta, f.phi);
    }
    throw std::invalid_argument("make_state: unknown family");
}

inline Family family_from_name(const std::string& name) {
    if (name == "brs") return Family::kBrs;
    if (name == "ghzls") return Family::kGhzls;
    if (name == "three-qubit" || name == "three_qubit") return Family::kThreeQubit;
    if (name == "hybrid23" || name == "hybrid-23") return Family::kHybrid23;
    if (name == "qutrit-ghz" || name == "qutrit_ghz") return Family::kQutritGhz;
    throw std::invalid_argument("unknown family: " + name);
}

}  // namespace entdist
