#include "doctest.h"

#include "sso/discretization.hpp"
#include "sso/eigensolver.hpp"
#include "sso/errors.hpp"
#include "sso/observables.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace sso;

namespace {

PotentialSpec harmonic() {
    PotentialSpec s;
    s.family = Family::power_law;
    s.alpha = 1.0;
    s.beta = 2.0;
    return s;
}

// grid-normalized Gaussian ground state of the harmonic well
std::vector<double> gaussian(const Grid& g) {
    std::vector<double> psi(g.n_points);
    double s2 = 0.0;
    for (int i = 0; i < g.n_points; ++i) {
        psi[i] = std::exp(-0.5 * g.q(i) * g.q(i));
        s2 += psi[i] * psi[i];
    }
    const double norm = 1.0 / std::sqrt(s2 * g.h);
    for (auto& v : psi) v *= norm;
    return psi;
}

} // namespace

TEST_CASE("moments of the analytic Gaussian") {
    Grid g(-8.0, 8.0, 1599);
    auto psi = gaussian(g);

    CHECK(std::fabs(mean_position(psi, g)) <= 1e-10);
    CHECK(central_moment(psi, g, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(central_moment(psi, g, 1)) <= 1e-12);
    CHECK(central_moment(psi, g, 2) == doctest::Approx(0.5).epsilon(1e-8));
    // Gaussian moments: m_4 = 3 m_2^2, m_6 = 15 m_2^3
    CHECK(central_moment(psi, g, 4) == doctest::Approx(0.75).epsilon(1e-8));
    CHECK(central_moment(psi, g, 6) == doctest::Approx(15.0 / 8.0).epsilon(1e-8));
    CHECK(std::fabs(central_moment(psi, g, 3)) <= 1e-10);

    auto rep = moment_report(psi, g, 6);
    CHECK(rep.mu == mean_position(psi, g));
    CHECK(rep.central_moments.size() == 7);
    CHECK(rep.central_moments[2] == doctest::Approx(central_moment(psi, g, 2)).epsilon(1e-13));
    CHECK(rep.central_moments[4] == doctest::Approx(central_moment(psi, g, 4)).epsilon(1e-13));
}

TEST_CASE("moment preconditions") {
    Grid g(-8.0, 8.0, 399);
    auto psi = gaussian(g);
    CHECK_THROWS_AS(central_moment(psi, g, 21), ConfigError);
    CHECK_THROWS_AS(central_moment(psi, g, -1), ConfigError);
    CHECK_NOTHROW(central_moment(psi, g, 20));

    auto bad = psi;
    for (auto& v : bad) v *= 2.0;
    CHECK_THROWS_AS(mean_position(bad, g), std::invalid_argument);
    CHECK_THROWS_AS(central_moment(bad, g, 2), std::invalid_argument);

    bad = psi;
    bad.pop_back();
    CHECK_THROWS_AS(mean_position(bad, g), std::invalid_argument);
}

TEST_CASE("node counts follow the state index") {
    Grid g(-10.0, 10.0, 999);
    auto H = assemble_hamiltonian(g, harmonic(), 1.0, 1.0);
    auto sol = solve_lowest(H, g, 16);
    for (int n = 0; n < 16; ++n) {
        CHECK(node_count(sol.states[n]) == n);
        CHECK(std::fabs(mean_position(sol.states[n], g)) < 1e-8); // parity
    }
    CHECK(central_moment(sol.states[0], g, 2) == doctest::Approx(0.5).epsilon(1e-7));

    // sub-threshold wiggles are not nodes
    auto psi = sol.states[0];
    double peak = 0.0;
    for (double v : psi) peak = std::max(peak, std::fabs(v));
    for (size_t i = 0; i + 1 < psi.size(); i += 2) {
        if (std::fabs(psi[i]) < 1e-4 * peak) psi[i] = -1e-9 * peak;
    }
    CHECK(node_count(psi) == 0);
}

TEST_CASE("spacing analysis on a synthetic ladder") {
    std::vector<double> e;
    for (int n = 0; n < 10; ++n) e.push_back(n + 0.5);
    Landmarks lm;
    lm.v_v = 3.0;
    lm.v_max = 8.0;

    auto rep = spacing_analysis(e, lm);
    CHECK(rep.energies.size() == 10);
    CHECK(rep.spacings.size() == 9);
    CHECK(rep.scaled_spacings.size() == 8);
    for (double s : rep.spacings) CHECK(s == 1.0);
    for (double r : rep.scaled_spacings) CHECK(r == 1.0);
    CHECK(rep.bound_count == 8);     // strictly below 8.0, so E_7 = 7.5 is last
    CHECK(rep.branch_index == 3);    // E_3 = 3.5 is the first above v_v

    CHECK(count_bound(e, 8.0) == 8);
    CHECK(count_bound(e, 0.1) == 0);
    CHECK(count_bound({}, 1.0) == 0);
    CHECK(count_bound({0.5, 1.5}, 1.5) == 1); // boundary equality not bound

    lm.v_v = 100.0;
    CHECK(spacing_analysis(e, lm).branch_index == -1);

    CHECK_THROWS_AS(spacing_analysis({1.0, 2.0}, lm), std::invalid_argument);
    CHECK_THROWS_AS(spacing_analysis({1.0, 2.0, 2.0}, lm), std::invalid_argument);
    CHECK_THROWS_AS(spacing_analysis({1.0, 2.0, 1.5}, lm), std::invalid_argument);
}

TEST_CASE("mass-amplitude rescaling halves the spectrum") {
    // H(m=2, alpha=1) = H(m=1, alpha=2) / 2 entrywise on a shared grid
    PotentialSpec one;
    one.family = Family::sep_modified;
    one.alpha = 1.0;
    PotentialSpec two = one;
    two.alpha = 2.0;

    Grid g(-3.0, 2.2, 799);
    auto Ha = assemble_hamiltonian(g, two, 1.0, 1.0);
    auto Hb = assemble_hamiltonian(g, one, 1.0, 2.0);
    auto ea = solve_band_lowest(Ha, 6).energies;
    auto eb = solve_band_lowest(Hb, 6).energies;
    for (int i = 0; i < 6; ++i) {
        CHECK(eb[i] == doctest::Approx(0.5 * ea[i]).epsilon(1e-10));
    }
}
