// io.hpp — JSON state and density-matrix files.
//
// State file:    {"dims": [2, 2], "amps": [[re, im], ...]}   (length prod dims)
// Density file:  {"dims": [2, 2], "rho":  [[re, im], ...]}   (row-major, length D^2)

#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "entdist/roof.hpp"
#include "entdist/tensor.hpp"

namespace entdist {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NormalizationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidDensityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LoadedState {
    StateVector state;
    double norm_error = 0.0;   // | ||raw|| - 1 | of the file contents
    bool renormalized = false;  // true when the deviation exceeded quiet_tol
};

namespace detail {

inline nlohmann::json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

inline Dims dims_from_json(const nlohmann::json& j) {
    if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].empty())
        throw ParseError("missing or malformed \"dims\"");
    std::vector<int> d;
    for (const auto& e : j["dims"]) {
        if (!e.is_number_integer()) throw ParseError("\"dims\" entries must be integers");
        d.push_back(e.get<int>());
    }
    try {
        return Dims(std::move(d));
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad dims: ") + e.what());
    }
}

inline std::vector<cplx> pairs_from_json(const nlohmann::json& arr, std::size_t want,
                                         const char* key) {
    if (!arr.is_array() || arr.size() != want)
        throw ParseError(std::string("\"") + key + "\" must be an array of " +
                         std::to_string(want) + " [re, im] pairs");
    std::vector<cplx> out;
    out.reserve(want);
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw ParseError(std::string("\"") + key + "\" entries must be [re, im] pairs");
        const double re = e[0].get<double>();
        const double im = e[1].get<double>();
        if (!std::isfinite(re) || !std::isfinite(im))
            throw ParseError(std::string("\"") + key + "\" entries must be finite");
        out.emplace_back(re, im);
    }
    return out;
}

}  // namespace detail

/// Loads a state file.  Norm deviations up to `quiet_tol` are silently
/// normalized away, deviations up to `reject_tol` are normalized and flagged,
/// anything beyond is rejected.
inline LoadedState load_state_file(const std::string& path, double quiet_tol = 1e-6,
                                   double reject_tol = 1e-3) {
    const nlohmann::json j = detail::parse_file(path);
    Dims dims = detail::dims_from_json(j);
    if (!j.contains("amps")) throw ParseError("missing \"amps\"");
    std::vector<cplx> amps = detail::pairs_from_json(j["amps"], dims.total(), "amps");

    double n2 = 0.0;
    for (const cplx& z : amps) n2 += std::norm(z);
    const double err = std::abs(std::sqrt(n2) - 1.0);
    if (err > reject_tol) {
        std::ostringstream msg;
        msg << "state norm deviates from 1 by " << err << " (limit " << reject_tol << ")";
        throw NormalizationError(msg.str());
    }
    LoadedState loaded{StateVector(std::move(dims), std::move(amps)), err, err > quiet_tol};
    return loaded;
}

inline void save_state_file(const std::string& path, const StateVector& state) {
    nlohmann::json j;
    j["dims"] = state.dims().dims();
    nlohmann::json amps = nlohmann::json::array();
    for (std::size_t k = 0; k < state.size(); ++k)
        amps.push_back({state[k].real(), state[k].imag()});
    j["amps"] = std::move(amps);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << j.dump() << "\n";
}

/// Loads a density-matrix file and validates it: Hermitian, unit trace
/// (deviations up to `trace_tol` renormalized), and PSD down to -`psd_tol`.
inline DensityMatrix load_density_file(const std::string& path, double psd_tol = 1e-6,
                                       double trace_tol = 1e-3) {
    const nlohmann::json j = detail::parse_file(path);
    Dims dims = detail::dims_from_json(j);
    if (!j.contains("rho")) throw ParseError("missing \"rho\"");
    const std::size_t d = dims.total();
    std::vector<cplx> entries = detail::pairs_from_json(j["rho"], d * d, "rho");

    DenseOperator rho(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) rho(i, k) = entries[i * d + k];

    DensityMatrix dm(std::move(dims), std::move(rho));
    if (dm.hermiticity_defect() > 1e-8)
        throw InvalidDensityError("density matrix is not Hermitian");
    const double trace_err = dm.trace_defect();
    if (trace_err > trace_tol) {
        std::ostringstream msg;
        msg << "density matrix trace deviates from 1 by " << trace_err;
        throw NormalizationError(msg.str());
    }
    if (trace_err > 0.0) {
        const double tr = dm.rho.trace().real();
        if (tr <= 0.0) throw InvalidDensityError("density matrix trace is not positive");
        dm.rho *= cplx{1.0 / tr, 0.0};
    }
    const double min_eig = dm.min_eigenvalue();
    if (min_eig < -psd_tol) {
        std::ostringstream msg;
        msg << "density matrix has negative eigenvalue " << min_eig;
        throw InvalidDensityError(msg.str());
    }
    return dm;
}

inline void save_density_file(const std::string& path, const DensityMatrix& dm) {
    nlohmann::json j;
    j["dims"] = dm.dims.dims();
    nlohmann::json rho = nlohmann::json::array();
    const std::size_t d = dm.rho.dim();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) rho.push_back({dm.rho(i, k).real(), dm.rho(i, k).imag()});
    j["rho"] = std::move(rho);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << j.dump() << "\n";
}

}  // namespace entdist
