#include <catch2/catch.hpp>

#include "helpers.hpp"

using namespace entdist;
using namespace testutil;

namespace {

double generator_expectation(const StateVector& s, int mu, int l) {
    const DenseOperator t = embed_local(gellmann(s.dims().dim(mu)).generator(l), mu, s.dims());
    return expectation(s, t).real();
}

FsMetric ones_metric(int m) {
    FsMetric j;
    j.m = m;
    j.g.assign(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 1.0);
    return j;
}

double max_entry_diff(const FsMetric& a, const FsMetric& b) {
    double worst = 0.0;
    for (int i = 0; i < a.m; ++i)
        for (int j = 0; j < a.m; ++j) worst = std::max(worst, std::abs(a.at(i, j) - b.at(i, j)));
    return worst;
}

}  // namespace

TEST_CASE("covariance_matrix reproduces the hybrid-state matrices", "[measure]") {
    const double theta = 0.7;
    const double c2t = std::cos(2.0 * theta);
    const StateVector s = hybrid_qubit_qutrit(theta);

    SECTION("qubit covariance A_0") {
        const LocalCovariance cov = covariance_matrix(s, 0);
        REQUIRE(cov.a.dim() == 3);
        DenseOperator expect(3);
        expect(0, 0) = 1.0;
        expect(0, 1) = cplx{0.0, c2t};
        expect(1, 0) = cplx{0.0, -c2t};
        expect(1, 1) = 1.0;
        expect(2, 2) = 1.0 - c2t * c2t;
        REQUIRE(frob_dist(cov.a, expect) < 1e-12);
    }
    SECTION("qutrit covariance A_1 diagonal") {
        const LocalCovariance cov = covariance_matrix(s, 1);
        REQUIRE(cov.a.dim() == 8);
        const double c2 = std::cos(theta) * std::cos(theta);
        const double s2 = std::sin(theta) * std::sin(theta);
        // In this generator ordering the diagonal reads
        // (c2, c2, 1, 1, s2, s2, c2 s2, 3 c2 s2); as a multiset it matches the
        // tuple (c2, c2, c2 s2, s2, s2, 3 c2 s2, 1, 1) quoted for the
        // block-ordered basis.
        const std::vector<double> expect = {c2, c2, 1.0, 1.0, s2, s2, c2 * s2, 3.0 * c2 * s2};
        std::vector<double> got;
        for (std::size_t i = 0; i < 8; ++i) {
            REQUIRE(std::abs(cov.a(i, i).imag()) < 1e-13);
            got.push_back(cov.a(i, i).real());
            REQUIRE(got.back() == Approx(expect[i]).margin(1e-12));
        }
        std::vector<double> multiset_want = {c2, c2, c2 * s2, s2, s2, 3.0 * c2 * s2, 1.0, 1.0};
        std::sort(got.begin(), got.end());
        std::sort(multiset_want.begin(), multiset_want.end());
        for (std::size_t i = 0; i < 8; ++i)
            REQUIRE(got[i] == Approx(multiset_want[i]).margin(1e-12));
    }
    SECTION("product states have tr(A_mu) = 2(d_mu - 1)") {
        Rng rng(31);
        const Dims dims({2, 3, 2});
        const StateVector prod = random_product_state(dims, rng);
        for (int mu = 0; mu < dims.count(); ++mu) {
            const LocalCovariance cov = covariance_matrix(prod, mu);
            REQUIRE(cov.a.trace().real() ==
                    Approx(2.0 * (dims.dim(mu) - 1)).margin(1e-10));
        }
    }
    SECTION("Hermitian, PSD, trace in [2(d-1), 2(d^2-1)/d] on random states") {
        Rng rng(57);
        for (const std::vector<int>& ds : {std::vector<int>{2, 2}, {2, 3}, {3, 3}, {2, 2, 2}}) {
            const Dims dims(ds);
            const StateVector st = random_state(dims, rng);
            for (int mu = 0; mu < dims.count(); ++mu) {
                const LocalCovariance cov = covariance_matrix(st, mu);
                const double d = dims.dim(mu);
                REQUIRE(cov.a.is_hermitian(1e-12));
                REQUIRE(hermitian_eig(cov.a).eigenvalues.back() >= -1e-10);
                const double tr = cov.a.trace().real();
                REQUIRE(tr >= 2.0 * (d - 1.0) - 1e-9);
                REQUIRE(tr <= 2.0 * (d * d - 1.0) / d + 1e-9);
            }
        }
    }
    SECTION("index out of range") {
        REQUIRE_THROWS_AS(covariance_matrix(s, 2), std::invalid_argument);
    }
}

TEST_CASE("entanglement_pure closed forms", "[measure]") {
    SECTION("ghzls: E = M sin^2(2 theta)") {
        for (int m : {2, 3, 6})
            for (int i = 0; i <= 24; ++i) {
                const double theta = kPi * i / 24.0;
                REQUIRE(entanglement_pure(ghzls(m, theta)).e ==
                        Approx(ghzls_closed(m, theta)).margin(1e-11));
            }
    }
    SECTION("three-qubit: E = 2 sin^2(2 tau) + 3 sin^2(2 gamma) cos^2(2 tau)") {
        REQUIRE(entanglement_pure(three_qubit(kPi / 4.0, 0.0)).e == Approx(3.0).margin(1e-12));
        for (double gamma : {0.2, 0.9})
            for (double tau : {0.0, 0.4, kPi / 4.0})
                REQUIRE(entanglement_pure(three_qubit(gamma, tau)).e ==
                        Approx(three_qubit_closed(gamma, tau)).margin(1e-11));
    }
    SECTION("qutrit GHZ closed form") {
        for (int m : {2, 3})
            for (double theta : {0.0, 0.6, kPi / 2.0})
                for (double phi : {0.0, kPi / 4.0, 1.1})
                    REQUIRE(entanglement_pure(qutrit_ghz(m, theta, phi)).e ==
                            Approx(qutrit_ghz_closed(m, theta, phi)).margin(1e-11));
    }
    SECTION("product states measure zero") {
        Rng rng(8);
        for (const std::vector<int>& ds : {std::vector<int>{2, 2}, {2, 3}, {3, 3, 2}})
            REQUIRE(std::abs(entanglement_pure(random_product_state(Dims(ds), rng)).e) < 1e-10);
    }
    SECTION("per-subsystem contributions add up and stay in range") {
        Rng rng(12);
        const StateVector s = random_state(Dims({2, 3}), rng);
        const EntanglementResult r = entanglement_pure(s);
        double sum = 0.0;
        for (double c : r.per_subsystem) sum += c;
        REQUIRE(r.e == Approx(sum).margin(1e-10));
        REQUIRE(r.e >= 0.0);
        REQUIRE(r.e <= r.e_max + 1e-9);
        REQUIRE(r.e_max == Approx(7.0 / 3.0).margin(1e-12));
    }
    SECTION("dual form: trace excess of A_mu gives the same value") {
        Rng rng(13);
        for (int rep = 0; rep < 10; ++rep) {
            const Dims dims({2, 3});
            const StateVector s = random_state(dims, rng);
            const EntanglementResult r = entanglement_pure(s);
            double via_cov = 0.0;
            for (int mu = 0; mu < dims.count(); ++mu)
                via_cov += covariance_matrix(s, mu).a.trace().real() - 2.0 * (dims.dim(mu) - 1);
            REQUIRE(via_cov == Approx(r.e).margin(1e-10));
        }
    }
    SECTION("non-normalized input is rejected") {
        const StateVector bad = StateVector::raw(Dims({2}), {cplx{1.0, 0.0}, cplx{0.5, 0.0}});
        REQUIRE_THROWS_AS(entanglement_pure(bad), std::invalid_argument);
    }
}

TEST_CASE("brs_w_vectors gives the closed-form measure", "[measure]") {
    SECTION("E = M - sum ||w||^2 matches entanglement_pure") {
        for (int m : {2, 3, 5, 7}) {
            for (int i = 0; i <= 16; ++i) {
                const double phi = 2.0 * kPi * i / 16.0;
                const StateVector s = brs(m, phi);
                double sum = 0.0;
                for (const auto& w : brs_w_vectors(s))
                    sum += w[0] * w[0] + w[1] * w[1] + w[2] * w[2];
                REQUIRE(m - sum == Approx(entanglement_pure(s).e).margin(1e-10));
            }
        }
    }
    SECTION("phi = 0: sum ||w||^2 = M") {
        const StateVector s = brs(4, 0.0);
        double sum = 0.0;
        for (const auto& w : brs_w_vectors(s)) sum += w[0] * w[0] + w[1] * w[1] + w[2] * w[2];
        REQUIRE(sum == Approx(4.0).margin(1e-12));
    }
    SECTION("components equal the Pauli expectations on random states") {
        Rng rng(3);
        for (int rep = 0; rep < 5; ++rep) {
            const StateVector s = random_state(Dims::qubits(3), rng);
            const auto ws = brs_w_vectors(s);
            for (int nu = 0; nu < 3; ++nu) {
                REQUIRE(ws[static_cast<std::size_t>(nu)][2] ==
                        Approx(generator_expectation(s, nu, 3)).margin(1e-12));
                REQUIRE(ws[static_cast<std::size_t>(nu)][0] ==
                        Approx(generator_expectation(s, nu, 1)).margin(1e-12));
                REQUIRE(ws[static_cast<std::size_t>(nu)][1] ==
                        Approx(generator_expectation(s, nu, 2)).margin(1e-12));
            }
        }
    }
    SECTION("non-qubit input is rejected") {
        REQUIRE_THROWS_AS(brs_w_vectors(hybrid_qubit_qutrit(0.3)), std::invalid_argument);
    }
}

TEST_CASE("fs_metric at chosen directions", "[measure]") {
    SECTION("two-qubit BRS at the stated minimizers: s^2 on the whole matrix") {
        // The off-diagonal is <AB> - <A><B> = 1 - cos^2(phi/2) = s^2 (it
        // reaches 1 exactly at phi = pi, where the matrix is J_2).
        for (double phi : {0.4, 1.3, 2.0, kPi}) {
            const double c = std::cos(phi / 2.0), s = std::sin(phi / 2.0);
            DirectionSet dirs;
            dirs.v = {{c, -s, 0.0}, {c, s, 0.0}};
            const FsMetric g = fs_metric(brs(2, phi), dirs);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    REQUIRE(g.at(i, j) == Approx(s * s).margin(1e-12));
        }
        const FsMetric at_pi = fs_metric(brs(2, kPi), DirectionSet{{{0.0, -1.0, 0.0}, {0.0, 1.0, 0.0}}});
        REQUIRE(max_entry_diff(at_pi, ones_metric(2)) < 1e-12);
    }
    SECTION("GHZLS at v = e3 gives sin^2(2 theta) J_M") {
        for (int m : {2, 4})
            for (double theta : {0.3, kPi / 4.0, 1.2}) {
                DirectionSet dirs;
                dirs.v.assign(static_cast<std::size_t>(m), {0.0, 0.0, 1.0});
                const FsMetric g = fs_metric(ghzls(m, theta), dirs);
                const double want = std::sin(2.0 * theta) * std::sin(2.0 * theta);
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j) REQUIRE(g.at(i, j) == Approx(want).margin(1e-12));
            }
    }
    SECTION("product states factorize: off-diagonals vanish") {
        Rng rng(101);
        const Dims dims({2, 3});
        const StateVector prod = random_product_state(dims, rng);
        DirectionSet dirs;
        dirs.v = {random_unit_vector(3, rng), random_unit_vector(8, rng)};
        const FsMetric g = fs_metric(prod, dirs);
        REQUIRE(std::abs(g.at(0, 1)) < 1e-12);
        REQUIRE(g.at(0, 1) == g.at(1, 0));
    }
    SECTION("non-unit directions are rejected") {
        DirectionSet dirs;
        dirs.v = {{0.9, 0.0, 0.0}, {0.0, 0.0, 1.0}};
        REQUIRE_THROWS_AS(fs_metric(brs(2, 1.0), dirs), std::invalid_argument);
    }
}

TEST_CASE("trace_min_directions aligns with the Bloch vectors", "[measure]") {
    SECTION("two-qubit BRS: +-(c, -+s, 0)") {
        for (double phi : {0.5, 1.0, 2.0, 2.8}) {
            const double c = std::cos(phi / 2.0), s = std::sin(phi / 2.0);
            const DirectionSet dirs = trace_min_directions(brs(2, phi));
            const double dot0 = dirs.v[0][0] * c - dirs.v[0][1] * s;
            const double dot1 = dirs.v[1][0] * c + dirs.v[1][1] * s;
            REQUIRE(std::abs(dot0) == Approx(1.0).margin(1e-9));
            REQUIRE(std::abs(dot1) == Approx(1.0).margin(1e-9));
        }
    }
    SECTION("GHZLS with cos(2 theta) != 0: +-e3") {
        for (double theta : {0.2, 1.0}) {
            const DirectionSet dirs = trace_min_directions(ghzls(3, theta));
            for (const auto& v : dirs.v) REQUIRE(std::abs(v[2]) == Approx(1.0).margin(1e-9));
        }
    }
    SECTION("three-qubit family: third qubit points along (sin2g sin2t, 0, cos2g)") {
        for (double gamma : {0.3, 1.0})
            for (double tau : {0.2, 0.6}) {
                const DirectionSet dirs = trace_min_directions(three_qubit(gamma, tau));
                const double bx = std::sin(2.0 * gamma) * std::sin(2.0 * tau);
                const double bz = std::cos(2.0 * gamma);
                const double n = std::sqrt(bx * bx + bz * bz);
                REQUIRE(dirs.v[2][0] == Approx(bx / n).margin(1e-9));
                REQUIRE(dirs.v[2][1] == Approx(0.0).margin(1e-9));
                REQUIRE(dirs.v[2][2] == Approx(bz / n).margin(1e-9));
            }
    }
    SECTION("the minimized trace equals E") {
        Rng rng(44);
        for (int rep = 0; rep < 10; ++rep) {
            const StateVector s = random_state(Dims::qubits(3), rng);
            const FsMetric g = fs_metric(s, trace_min_directions(s));
            REQUIRE(g.trace() == Approx(entanglement_pure(s).e).margin(1e-10));
        }
    }
    SECTION("degenerate Bloch vectors fall back to (0,0,1)") {
        const DirectionSet dirs = trace_min_directions(ghzls(2, kPi / 4.0));
        for (const auto& v : dirs.v) {
            REQUIRE(v[0] == 0.0);
            REQUIRE(v[1] == 0.0);
            REQUIRE(v[2] == 1.0);
        }
    }
    SECTION("non-qubit input is rejected") {
        REQUIRE_THROWS_AS(trace_min_directions(hybrid_qubit_qutrit(0.5)), std::invalid_argument);
    }
}

TEST_CASE("entanglement_metric of the three-qubit BRS", "[measure]") {
    // For phi in (0, pi):
    //   g~ = s^2 [[1, c, 0], [c, 1 + c^2, c], [0, c, 1]],
    // with tr(g~) = s^2 (3 + c^2) = E.  The (0,2) corner vanishes: the plain
    // product <(v.T)_0 (v.T)_2> equals <(v.T)_0><(v.T)_2> = c^2 here.
    for (double phi : {0.6, 1.4, kPi / 2.0, 2.4}) {
        const double c = std::cos(phi / 2.0), s2 = std::sin(phi / 2.0) * std::sin(phi / 2.0);
        const FsMetric g = entanglement_metric(brs(3, phi));
        REQUIRE(g.at(0, 0) == Approx(s2).margin(1e-11));
        REQUIRE(g.at(1, 1) == Approx(s2 * (1.0 + c * c)).margin(1e-11));
        REQUIRE(g.at(2, 2) == Approx(s2).margin(1e-11));
        REQUIRE(g.at(0, 1) == Approx(s2 * c).margin(1e-11));
        REQUIRE(g.at(1, 2) == Approx(s2 * c).margin(1e-11));
        REQUIRE(g.at(0, 2) == Approx(0.0).margin(1e-11));
        REQUIRE(g.trace() == Approx(brs3_closed(phi)).margin(1e-10));
    }

    SECTION("maximal BRS with the explicit direction choice is the matrix of ones") {
        DirectionSet dirs;
        dirs.v = {{-1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}};
        const FsMetric g = fs_metric(brs(3, kPi), dirs);
        REQUIRE(max_entry_diff(g, ones_metric(3)) < 1e-12);
    }
}

TEST_CASE("em_eigenvalues structure", "[measure]") {
    SECTION("GHZLS has one nonzero eigenvalue M sin^2(2 theta)") {
        for (double theta : {0.4, kPi / 4.0, 1.1}) {
            const std::vector<double> eigs = em_eigenvalues(ghzls(7, theta));
            REQUIRE(eigs[0] == Approx(7.0 * std::sin(2.0 * theta) * std::sin(2.0 * theta))
                                   .margin(1e-9));
            for (std::size_t i = 1; i < eigs.size(); ++i) REQUIRE(std::abs(eigs[i]) < 1e-9);
        }
    }
    SECTION("interior BRS has exactly M nonzero eigenvalues") {
        for (double phi : {0.5, 1.5, 2.5, kPi}) {
            const std::vector<double> eigs = em_eigenvalues(brs(7, phi));
            for (double lam : eigs) REQUIRE(lam > 1e-6);
        }
    }
    SECTION("product states have no eigenvalue above noise") {
        Rng rng(66);
        const std::vector<double> eigs = em_eigenvalues(random_product_state(Dims::qubits(4), rng));
        for (double lam : eigs) REQUIRE(std::abs(lam) < 1e-9);
    }
}

TEST_CASE("distance bound: tr(g(v)) >= E for any directions", "[measure]") {
    SECTION("product state") {
        Rng rng(5);
        const DistanceBoundReport rep =
            distance_bound_check(random_product_state(Dims::qubits(3), rng), 50, 9);
        REQUIRE(rep.bound_satisfied);
        REQUIRE(rep.e == Approx(0.0).margin(1e-10));
        REQUIRE(rep.min_trace >= -1e-9);
    }
    SECTION("maximally entangled GHZLS: the trace never drops below M") {
        const DistanceBoundReport rep = distance_bound_check(ghzls(3, kPi / 4.0), 100, 10);
        REQUIRE(rep.bound_satisfied);
        REQUIRE(rep.min_trace >= 3.0 - 1e-9);
    }
    SECTION("BRS at phi = pi/2") {
        const DistanceBoundReport rep = distance_bound_check(brs(4, kPi / 2.0), 100, 11);
        REQUIRE(rep.bound_satisfied);
    }
    SECTION("random states, and the metric trace at the minimizer is minimal") {
        Rng rng(71);
        for (int rep = 0; rep < 5; ++rep) {
            const StateVector s = random_state(Dims::qubits(3), rng);
            const DistanceBoundReport r = distance_bound_check(s, 100, 1000 + rep);
            REQUIRE(r.bound_satisfied);
        }
    }
}

TEST_CASE("von Neumann entropy", "[measure]") {
    SECTION("hybrid family: binary entropy of cos^2(theta)") {
        for (double theta : {0.3, kPi / 4.0, 1.2}) {
            const double c2 = std::cos(theta) * std::cos(theta);
            const double s2 = std::sin(theta) * std::sin(theta);
            const double want = -c2 * std::log2(c2) - s2 * std::log2(s2);
            REQUIRE(von_neumann_entropy(hybrid_qubit_qutrit(theta), {0}) ==
                    Approx(want).margin(1e-10));
        }
    }
    SECTION("two-qutrit GHZ: three-outcome entropy") {
        const double theta = 0.8, phi = 0.5;
        const double a2 = std::pow(std::sin(theta) * std::cos(phi), 2);
        const double b2 = std::pow(std::sin(theta) * std::sin(phi), 2);
        const double c2 = std::pow(std::cos(theta), 2);
        const double want = -a2 * std::log2(a2) - b2 * std::log2(b2) - c2 * std::log2(c2);
        REQUIRE(von_neumann_entropy(qutrit_ghz(2, theta, phi), {0}) == Approx(want).margin(1e-10));
    }
    SECTION("product states carry no entropy; 0 log 0 = 0") {
        Rng rng(2);
        REQUIRE(von_neumann_entropy(random_product_state(Dims({2, 3}), rng), {1}) ==
                Approx(0.0).margin(1e-10));
        REQUIRE(von_neumann_entropy(ghzls(2, 0.0), {0}) == Approx(0.0).margin(1e-12));
    }
}

TEST_CASE("max_entanglement", "[measure]") {
    REQUIRE(max_entanglement(Dims({2, 2})) == Approx(2.0));
    REQUIRE(max_entanglement(Dims({2, 3})) == Approx(7.0 / 3.0));
    REQUIRE(max_entanglement(Dims({3, 3})) == Approx(8.0 / 3.0));
}

TEST_CASE("the measure is invariant under local unitaries", "[measure][property]") {
    Rng rng(20240);
    const std::vector<std::vector<int>> dim_sets = {{2, 2}, {2, 3}, {3, 3}, {2, 2, 2}, {2, 3, 2}};
    double worst = 0.0;
    for (int rep = 0; rep < 200; ++rep) {
        const Dims dims(dim_sets[static_cast<std::size_t>(rep) % dim_sets.size()]);
        const StateVector s = random_state(dims, rng);
        const StateVector rotated = apply_local_unitaries(s, random_local_unitaries(dims, rng));
        worst = std::max(worst,
                         std::abs(entanglement_pure(rotated).e - entanglement_pure(s).e));
    }
    REQUIRE(worst < 1e-9);
}

TEST_CASE("E vanishes exactly on products, and near-zero E implies purity", "[measure][property]") {
    Rng rng(808);
    std::vector<StateVector> low_e_corpus;
    for (const std::vector<int>& ds : {std::vector<int>{2, 2}, {2, 3}, {2, 2, 2}})
        for (int rep = 0; rep < 5; ++rep) {
            StateVector s = random_product_state(Dims(ds), rng);
            REQUIRE(std::abs(entanglement_pure(s).e) < 1e-10);
            low_e_corpus.push_back(std::move(s));
        }
    low_e_corpus.push_back(ghzls(3, 0.0));
    low_e_corpus.push_back(three_qubit(0.0, 0.0));

    for (const StateVector& s : low_e_corpus) {
        if (std::abs(entanglement_pure(s).e) >= 1e-10) continue;
        for (int mu = 0; mu < s.dims().count(); ++mu) {
            const DenseOperator rho = partial_trace(s, {mu});
            REQUIRE((rho * rho).trace().real() > 1.0 - 1e-8);
        }
    }
}

TEST_CASE("maximal states have vanishing generator expectations", "[measure][property]") {
    const double qutrit_theta = std::acos(1.0 / std::sqrt(3.0));
    const std::vector<StateVector> maximal = {ghzls(3, kPi / 4.0), brs(3, kPi),
                                              qutrit_ghz(2, qutrit_theta, kPi / 4.0)};
    for (const StateVector& s : maximal) {
        const EntanglementResult r = entanglement_pure(s);
        REQUIRE(r.e == Approx(r.e_max).margin(1e-9));
        for (int mu = 0; mu < s.dims().count(); ++mu) {
            const int count = s.dims().dim(mu) * s.dims().dim(mu) - 1;
            for (int l = 1; l <= count; ++l)
                REQUIRE(std::abs(generator_expectation(s, mu, l)) < 1e-6);
        }
    }
}

TEST_CASE("EM equivalence for M <= 3, inequivalence at M = 4", "[measure][property]") {
    SECTION("M = 2: maximal BRS with the stated directions matches GHZLS") {
        const FsMetric brs_em =
            fs_metric(brs(2, kPi), DirectionSet{{{0.0, -1.0, 0.0}, {0.0, 1.0, 0.0}}});
        const FsMetric ghz_em = entanglement_metric(ghzls(2, kPi / 4.0));
        REQUIRE(max_entry_diff(brs_em, ghz_em) < 1e-9);
    }
    SECTION("M = 3: both equal the matrix of ones") {
        DirectionSet dirs;
        dirs.v = {{-1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}};
        const FsMetric brs_em = fs_metric(brs(3, kPi), dirs);
        const FsMetric ghz_em = entanglement_metric(ghzls(3, kPi / 4.0));
        REQUIRE(max_entry_diff(brs_em, ghz_em) < 1e-9);
        REQUIRE(max_entry_diff(ghz_em, ones_metric(3)) < 1e-9);
    }
    SECTION("M = 4: the two matrices differ by more than 0.1 somewhere") {
        const FsMetric brs_em = entanglement_metric(brs(4, kPi));
        const FsMetric ghz_em = entanglement_metric(ghzls(4, kPi / 4.0));
        REQUIRE(max_entry_diff(brs_em, ghz_em) > 0.1);
    }
}

TEST_CASE("hybrid measure and entropy agree on extrema", "[measure][property]") {
    const int n = 101;
    int argmax_e = 0, argmax_s = 0;
    double best_e = -1.0, best_s = -1.0;
    for (int i = 0; i < n; ++i) {
        const double theta = kPi / 2.0 * i / (n - 1);
        const StateVector st = hybrid_qubit_qutrit(theta);
        const double e = entanglement_pure(st).e;
        const double s = von_neumann_entropy(st, {0});
        if (e > best_e) { best_e = e; argmax_e = i; }
        if (s > best_s) { best_s = s; argmax_s = i; }
        if (i == 0 || i == n - 1) {
            REQUIRE(std::abs(e) < 1e-9);
            REQUIRE(std::abs(s) < 1e-9);
        }
    }
    REQUIRE(argmax_e == argmax_s);
    REQUIRE(argmax_e == (n - 1) / 2);  // theta = pi/4
}
