// entdist — batch CLI: construct family states or load states from files,
// compute the entanglement measure, entanglement metric, eigenvalues, entropy
// and mixed-state roof, sweep parameter grids, and emit CSV curves.
//
// Exit codes: 0 ok, 1 self-test failure, 2 parse error, 3 normalization
// error, 4 unsupported dims, 5 invalid density matrix.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "entdist/entdist.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSelfTest = 1;
constexpr int kExitParse = 2;
constexpr int kExitNormalization = 3;
constexpr int kExitUnsupportedDims = 4;
constexpr int kExitInvalidDensity = 5;

std::string fmt12(double x) {
    if (!std::isfinite(x)) throw std::runtime_error("non-finite value in output");
    if (x == 0.0) x = 0.0;  // canonicalize -0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string dims_to_string(const entdist::Dims& dims) {
    std::string s = "[";
    for (int mu = 0; mu < dims.count(); ++mu) {
        if (mu) s += ", ";
        s += std::to_string(dims.dim(mu));
    }
    return s + "]";
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write file: " + out_path);
    out << text;
}

// ---------------------------------------------------------------------------
// measure

int run_measure(const std::string& path, bool as_json, const std::string& out_path, double tol) {
    const entdist::LoadedState loaded = entdist::load_state_file(path, 1e-6, tol);
    if (loaded.renormalized)
        std::cerr << "warning: state renormalized (norm deviation " << fmt12(loaded.norm_error)
                  << ")\n";
    const entdist::EntanglementResult res = entdist::entanglement_pure(loaded.state);
    const int m = loaded.state.dims().count();

    std::ostringstream os;
    if (as_json) {
        nlohmann::json j;
        j["dims"] = loaded.state.dims().dims();
        j["E"] = res.e;
        j["E_max"] = res.e_max;
        j["E_per_M"] = res.e / m;
        j["per_subsystem"] = res.per_subsystem;
        j["renormalized"] = loaded.renormalized;
        os << j.dump(2) << "\n";
    } else {
        os << "dims: " << dims_to_string(loaded.state.dims()) << "\n";
        os << "E: " << fmt12(res.e) << "\n";
        os << "E/M: " << fmt12(res.e / m) << "\n";
        os << "E_max: " << fmt12(res.e_max) << "\n";
        for (int mu = 0; mu < m; ++mu)
            os << "subsystem " << mu << ": " << fmt12(res.per_subsystem[static_cast<std::size_t>(mu)])
               << "\n";
    }
    emit(os.str(), out_path);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep

struct Axis {
    std::string name;  // as given, e.g. "phi_over_2pi"
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
};

// "name=start:stop:count"
Axis parse_axis(const std::string& spec) {
    const std::size_t eq = spec.find('=');
    if (eq == std::string::npos) throw entdist::ParseError("axis must look like name=start:stop:count");
    Axis ax;
    ax.name = spec.substr(0, eq);
    const std::string rest = spec.substr(eq + 1);
    const std::size_t c1 = rest.find(':');
    const std::size_t c2 = rest.rfind(':');
    if (c1 == std::string::npos || c2 == c1)
        throw entdist::ParseError("axis must look like name=start:stop:count");
    try {
        ax.start = std::stod(rest.substr(0, c1));
        ax.stop = std::stod(rest.substr(c1 + 1, c2 - c1 - 1));
        ax.count = std::stoi(rest.substr(c2 + 1));
    } catch (const std::exception&) {
        throw entdist::ParseError("axis values must be numeric");
    }
    if (ax.count < 2) throw entdist::ParseError("axis count must be >= 2");
    return ax;
}

// Accepts plain radian names and *_over_pi / *_over_2pi unit variants.
std::pair<std::string, double> canonical_param(const std::string& name, double value) {
    const std::string pi_suffix = "_over_pi";
    const std::string twopi_suffix = "_over_2pi";
    if (name.size() > twopi_suffix.size() &&
        name.compare(name.size() - twopi_suffix.size(), twopi_suffix.size(), twopi_suffix) == 0)
        return {name.substr(0, name.size() - twopi_suffix.size()), value * 2.0 * std::numbers::pi};
    if (name.size() > pi_suffix.size() &&
        name.compare(name.size() - pi_suffix.size(), pi_suffix.size(), pi_suffix) == 0)
        return {name.substr(0, name.size() - pi_suffix.size()), value * std::numbers::pi};
    return {name, value};
}

entdist::FamilyState family_state(entdist::Family family, int m,
                                  const std::map<std::string, double>& radians) {
    entdist::FamilyState f;
    f.family = family;
    f.m = m;
    std::vector<std::string> allowed;
    switch (family) {
        case entdist::Family::kBrs: allowed = {"phi"}; break;
        case entdist::Family::kGhzls: allowed = {"theta", "phase"}; break;
        case entdist::Family::kThreeQubit: allowed = {"gamma", "tau"}; break;
        case entdist::Family::kHybrid23: allowed = {"theta"}; break;
        case entdist::Family::kQutritGhz: allowed = {"theta", "phi"}; break;
    }
    for (const auto& [key, value] : radians) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw entdist::ParseError("parameter \"" + key + "\" is not used by this family");
        if (key == "phi") f.phi = value;
        else if (key == "theta") f.theta = value;
        else if (key == "gamma") f.gamma = value;
        else if (key == "tau") f.tau = value;
        else if (key == "phase") f.phase = value;
    }
    return f;
}

int run_sweep(const std::string& family_name, int m, const std::vector<std::string>& axis_specs,
              const std::vector<std::string>& set_specs, const std::string& outputs_csv,
              const std::string& entropy_keep_csv, const std::string& out_path) {
    if (out_path.empty()) throw entdist::ParseError("sweep requires --out <csv path>");
    const entdist::Family family = entdist::family_from_name(family_name);

    if (axis_specs.empty() || axis_specs.size() > 2)
        throw entdist::ParseError("sweep needs one or two --axis specs");
    std::vector<Axis> axes;
    for (const std::string& s : axis_specs) axes.push_back(parse_axis(s));

    std::map<std::string, double> fixed;
    for (const std::string& s : set_specs) {
        const std::size_t eq = s.find('=');
        if (eq == std::string::npos) throw entdist::ParseError("--set must look like name=value");
        double v = 0.0;
        try {
            v = std::stod(s.substr(eq + 1));
        } catch (const std::exception&) {
            throw entdist::ParseError("--set value must be numeric");
        }
        const auto [key, radians] = canonical_param(s.substr(0, eq), v);
        fixed[key] = radians;
    }

    std::vector<std::string> outputs;
    {
        std::stringstream ss(outputs_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok != "E" && tok != "E_per_M" && tok != "eigenvalues" && tok != "entropy")
                throw entdist::ParseError("unknown output \"" + tok + "\"");
            outputs.push_back(tok);
        }
    }
    if (outputs.empty()) throw entdist::ParseError("sweep needs at least one output");

    std::vector<int> keep;
    {
        std::stringstream ss(entropy_keep_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                keep.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw entdist::ParseError("--entropy-keep must be a comma list of subsystem indices");
            }
        }
    }

    // Probe the grid origin once: fixes M, validates names, and rejects
    // eigenvalue requests on non-qubit families before any file is written.
    auto state_at = [&](double a0, double a1) {
        std::map<std::string, double> params = fixed;
        const auto [k0, v0] = canonical_param(axes[0].name, a0);
        params[k0] = v0;
        if (axes.size() == 2) {
            const auto [k1, v1] = canonical_param(axes[1].name, a1);
            params[k1] = v1;
        }
        return entdist::make_state(family_state(family, m, params));
    };
    const entdist::StateVector probe = state_at(axes[0].start, axes.size() == 2 ? axes[1].start : 0.0);
    const int big_m = probe.dims().count();
    const bool wants_eigenvalues =
        std::find(outputs.begin(), outputs.end(), "eigenvalues") != outputs.end();
    if (wants_eigenvalues && !probe.dims().all_qubits()) {
        std::cerr << "error: eigenvalues output needs an all-qubit family\n";
        return kExitUnsupportedDims;
    }

    std::ostringstream csv;
    csv << axes[0].name;
    if (axes.size() == 2) csv << "," << axes[1].name;
    for (const std::string& outp : outputs) {
        if (outp == "eigenvalues") {
            for (int i = 1; i <= big_m; ++i) csv << ",eig_" << i;
        } else if (outp == "entropy") {
            csv << ",entropy";
        } else {
            csv << "," << outp;
        }
    }
    csv << "\n";

    auto axis_value = [](const Axis& ax, int i) {
        return ax.start + (ax.stop - ax.start) * static_cast<double>(i) / (ax.count - 1);
    };

    const int n0 = axes[0].count;
    const int n1 = axes.size() == 2 ? axes[1].count : 1;
    for (int i0 = 0; i0 < n0; ++i0) {
        for (int i1 = 0; i1 < n1; ++i1) {
            const double a0 = axis_value(axes[0], i0);
            const double a1 = axes.size() == 2 ? axis_value(axes[1], i1) : 0.0;
            const entdist::StateVector state = state_at(a0, a1);
            csv << fmt12(a0);
            if (axes.size() == 2) csv << "," << fmt12(a1);
            for (const std::string& outp : outputs) {
                if (outp == "E") {
                    csv << "," << fmt12(entdist::entanglement_pure(state).e);
                } else if (outp == "E_per_M") {
                    csv << "," << fmt12(entdist::entanglement_pure(state).e / big_m);
                } else if (outp == "eigenvalues") {
                    for (double lam : entdist::em_eigenvalues(state)) csv << "," << fmt12(lam);
                } else {
                    csv << "," << fmt12(entdist::von_neumann_entropy(state, keep));
                }
            }
            csv << "\n";
        }
    }

    // Write whole-file, then rename: no partial CSV is ever left behind.
    const std::filesystem::path target(out_path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write file: " + tmp.string());
        out << csv.str();
    }
    std::filesystem::rename(tmp, target);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// em

// "x,y,z;x,y,z;..." -> one unit 3-vector per qubit
entdist::DirectionSet parse_directions(const std::string& spec, int m) {
    entdist::DirectionSet dirs;
    std::stringstream groups(spec);
    std::string group;
    while (std::getline(groups, group, ';')) {
        std::vector<double> v;
        std::stringstream parts(group);
        std::string part;
        while (std::getline(parts, part, ',')) {
            try {
                v.push_back(std::stod(part));
            } catch (const std::exception&) {
                throw entdist::ParseError("direction components must be numeric");
            }
        }
        if (v.size() != 3) throw entdist::ParseError("each direction needs exactly 3 components");
        dirs.v.push_back(std::move(v));
    }
    if (static_cast<int>(dirs.v.size()) != m)
        throw entdist::ParseError("need exactly one direction per qubit");
    return dirs;
}

int run_em(const std::string& path, const std::string& directions_spec, bool as_json,
           const std::string& out_path, double tol) {
    const entdist::LoadedState loaded = entdist::load_state_file(path, 1e-6, tol);
    if (loaded.renormalized)
        std::cerr << "warning: state renormalized (norm deviation " << fmt12(loaded.norm_error)
                  << ")\n";
    const entdist::StateVector& state = loaded.state;
    if (!state.dims().all_qubits()) {
        std::cerr << "error: entanglement metric is defined for all-qubit systems only\n";
        return kExitUnsupportedDims;
    }
    const int m = state.dims().count();

    entdist::FsMetric metric = directions_spec.empty()
                                   ? entdist::entanglement_metric(state)
                                   : entdist::fs_metric(state, parse_directions(directions_spec, m));
    const std::vector<double> eigs =
        entdist::hermitian_eig(metric.as_operator()).eigenvalues;

    std::ostringstream os;
    if (as_json) {
        nlohmann::json j;
        j["dims"] = state.dims().dims();
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 0; i < m; ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int k = 0; k < m; ++k) row.push_back(metric.at(i, k));
            rows.push_back(std::move(row));
        }
        j["em"] = std::move(rows);
        j["directions"] = metric.directions.v;
        j["trace"] = metric.trace();
        j["eigenvalues"] = eigs;
        os << j.dump(2) << "\n";
    } else {
        os << "dims: " << dims_to_string(state.dims()) << "\n";
        os << "directions:\n";
        for (int mu = 0; mu < m; ++mu) {
            const auto& v = metric.directions.v[static_cast<std::size_t>(mu)];
            os << "  mu " << mu << ": (" << fmt12(v[0]) << ", " << fmt12(v[1]) << ", "
               << fmt12(v[2]) << ")\n";
        }
        os << "EM:\n";
        for (int i = 0; i < m; ++i) {
            os << " ";
            for (int k = 0; k < m; ++k) os << " " << fmt12(metric.at(i, k));
            os << "\n";
        }
        os << "tr(EM): " << fmt12(metric.trace()) << "\n";
        os << "eigenvalues:";
        for (double lam : eigs) os << " " << fmt12(lam);
        os << "\n";
    }
    emit(os.str(), out_path);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// mixed

int run_mixed(const std::string& path, entdist::RoofConfig cfg, bool as_json,
              const std::string& out_path) {
    const entdist::DensityMatrix dm = entdist::load_density_file(path, 1e-6, 1e-3);
    const entdist::RoofResult res = entdist::minimize_roof(dm, cfg);

    std::vector<double> sorted = res.restart_values;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[sorted.size() / 2];

    std::ostringstream os;
    if (as_json) {
        nlohmann::json j;
        j["dims"] = dm.dims.dims();
        j["E_roof_upper_bound"] = res.upper_bound;
        j["label"] = "heuristic upper bound";
        j["restarts"] = res.restart_values.size();
        j["restart_best"] = sorted.front();
        j["restart_median"] = median;
        j["restart_worst"] = sorted.back();
        j["best_restart"] = res.best_restart;
        j["ensemble_size"] = res.best.probs.size();
        os << j.dump(2) << "\n";
    } else {
        os << "dims: " << dims_to_string(dm.dims) << "\n";
        os << "E_roof (heuristic upper bound): " << fmt12(res.upper_bound) << "\n";
        os << "restarts: " << res.restart_values.size() << " (best " << fmt12(sorted.front())
           << ", median " << fmt12(median) << ", worst " << fmt12(sorted.back()) << ")\n";
        os << "best ensemble size: " << res.best.probs.size() << " (restart " << res.best_restart
           << ")\n";
    }
    emit(os.str(), out_path);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// check

int run_check(std::uint64_t seed, bool inject_fault, const std::string& out_path) {
    constexpr double kCasimirTol = 1e-11;
    constexpr double kOrthoTol = 1e-12;
    constexpr double kPurityTol = 1e-10;
    constexpr double kMaxEigTol = 1e-10;
    constexpr double kFrameTol = 1e-9;
    constexpr double kLuTol = 1e-9;

    std::ostringstream os;
    bool ok = true;
    auto line = [&os, &ok](const std::string& what, double residual, double threshold) {
        const bool pass = residual < threshold;
        ok = ok && pass;
        os << what << ": residual " << fmt12(residual) << " (threshold " << fmt12(threshold)
           << ") " << (pass ? "[ok]" : "[FAIL]") << "\n";
    };

    for (int d = 2; d <= 6; ++d) {
        entdist::GeneratorSet gens = entdist::gellmann(d);
        if (inject_fault && d == 3) gens.t[0] *= entdist::cplx{1.01, 0.0};

        std::vector<entdist::StateVector> probes;
        entdist::Rng rng(entdist::substream_seed(seed, static_cast<std::uint64_t>(d)));
        for (int i = 0; i < 100; ++i) probes.push_back(entdist::random_state(entdist::Dims({d}), rng));
        const entdist::IdentityReport rep = entdist::verify_identities(
            gens, probes, 100, entdist::substream_seed(seed, 100 + static_cast<std::uint64_t>(d)));

        double ortho = 0.0;
        for (int a = 1; a <= gens.count(); ++a)
            for (int b = a; b <= gens.count(); ++b) {
                const entdist::cplx tr = (gens.generator(a) * gens.generator(b)).trace();
                ortho = std::max(ortho, std::abs(tr - (a == b ? entdist::cplx{2.0, 0.0}
                                                             : entdist::cplx{0.0, 0.0})));
            }

        const double casimir_target = 2.0 * (d * d - 1) / d;
        os << "d=" << d << " casimir target " << fmt12(casimir_target) << "\n";
        line("d=" + std::to_string(d) + " casimir", rep.casimir_residual, kCasimirTol);
        line("d=" + std::to_string(d) + " orthogonality", ortho, kOrthoTol);
        line("d=" + std::to_string(d) + " purity sum (target " + fmt12(2.0 * (d - 1) / d) + ")",
             rep.purity_residual, kPurityTol);
        line("d=" + std::to_string(d) + " frame invariance", rep.frame_residual, kFrameTol);
        const double max_eig = entdist::max_generator_eigenvalue(gens);
        line("d=" + std::to_string(d) + " max eigenvalue vs sqrt(2(d-1)/d)",
             std::abs(max_eig - std::sqrt(2.0 * (d - 1) / d)), kMaxEigTol);
    }

    // Local-unitary invariance smoke suite on small hybrid systems.
    {
        const std::vector<std::vector<int>> dim_sets = {{2, 2}, {2, 3}, {3, 3}, {2, 2, 2}};
        double worst = 0.0;
        entdist::Rng rng(entdist::substream_seed(seed, 1000));
        for (const std::vector<int>& ds : dim_sets) {
            const entdist::Dims dims(ds);
            for (int rep = 0; rep < 5; ++rep) {
                const entdist::StateVector s = entdist::random_state(dims, rng);
                const entdist::StateVector rotated =
                    entdist::apply_local_unitaries(s, entdist::random_local_unitaries(dims, rng));
                worst = std::max(worst, std::abs(entdist::entanglement_pure(rotated).e -
                                                 entdist::entanglement_pure(s).e));
            }
        }
        line("local-unitary invariance", worst, kLuTol);
    }

    os << (ok ? "all checks passed\n" : "CHECK FAILED\n");
    emit(os.str(), out_path);
    return ok ? kExitOk : kExitSelfTest;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entdist — entanglement measure toolkit for M-qudit hybrid systems"};
    app.require_subcommand(1);
    app.fallthrough();  // let common flags appear after the subcommand name

    std::string out_path;
    bool as_json = false;
    std::uint64_t seed = 0;
    double tol = 1e-3;
    app.add_option("--out", out_path, "Write the report/CSV to this path instead of stdout");
    app.add_flag("--json", as_json, "Emit a machine-readable JSON report");
    app.add_option("--seed", seed, "Seed for randomized procedures")->default_val("0");
    app.add_option("--tol", tol, "Reject state files whose norm deviates by more than this")
        ->default_val("1e-3");

    std::string measure_path;
    CLI::App* measure = app.add_subcommand("measure", "Entanglement measure of a state file");
    measure->add_option("state-file", measure_path, "JSON state file")->required();

    std::string family_name;
    int family_m = 3;
    std::vector<std::string> axis_specs;
    std::vector<std::string> set_specs;
    std::string outputs_csv = "E,E_per_M";
    std::string entropy_keep_csv = "0";
    CLI::App* sweep = app.add_subcommand("sweep", "Parameter sweep over a state family -> CSV");
    sweep->add_option("--family", family_name, "brs | ghzls | three-qubit | hybrid23 | qutrit-ghz")
        ->required();
    sweep->add_option("--m", family_m, "Subsystem count (brs, ghzls, qutrit-ghz)");
    sweep->add_option("--axis", axis_specs,
                      "Grid axis, name=start:stop:count (e.g. phi_over_2pi=0:1:201); at most two")
        ->required();
    sweep->add_option("--set", set_specs, "Fixed parameter, name=value (units-of-pi names allowed)");
    sweep->add_option("--outputs", outputs_csv, "Comma list of E, E_per_M, eigenvalues, entropy");
    sweep->add_option("--entropy-keep", entropy_keep_csv, "Subsystems kept for the entropy output");

    std::string em_path;
    std::string directions_spec;
    CLI::App* em = app.add_subcommand("em", "Entanglement metric of an all-qubit state file");
    em->add_option("state-file", em_path, "JSON state file")->required();
    em->add_option("--directions", directions_spec,
                   "Explicit unit directions \"x,y,z;x,y,z;...\" (one per qubit)");

    std::string mixed_path;
    entdist::RoofConfig roof_cfg;
    CLI::App* mixed = app.add_subcommand("mixed", "Convex-roof upper bound for a density-matrix file");
    mixed->add_option("density-file", mixed_path, "JSON density-matrix file")->required();
    mixed->add_option("--restarts", roof_cfg.restarts, "Optimizer restarts")->default_val("32");
    mixed->add_option("--iters", roof_cfg.max_iters, "Max iterations per restart")->default_val("500");
    mixed->add_option("--ensemble-len", roof_cfg.ensemble_len,
                      "Ensemble length L (0 picks max(rank^2, 4))");

    bool inject_fault = false;
    CLI::App* check = app.add_subcommand("check", "Generator identities and invariance self-test");
    check->add_flag("--inject-fault", inject_fault, "")->group("");  // test hook, hidden

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        if (*measure) return run_measure(measure_path, as_json, out_path, tol);
        if (*sweep)
            return run_sweep(family_name, family_m, axis_specs, set_specs, outputs_csv,
                             entropy_keep_csv, out_path);
        if (*em) return run_em(em_path, directions_spec, as_json, out_path, tol);
        if (*mixed) {
            roof_cfg.seed = seed;
            return run_mixed(mixed_path, roof_cfg, as_json, out_path);
        }
        if (*check) return run_check(seed, inject_fault, out_path);
    } catch (const entdist::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const entdist::NormalizationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNormalization;
    } catch (const entdist::InvalidDensityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidDensity;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitParse;
}
