#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "qwheel/mission.hpp"
#include "support.hpp"

using namespace qwheel;
using qwheel::test::rel_err;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double hbar = 1.054571817e-34;

double achieved_by_hand(const MissionSpec& s) {
    return s.active_mass_fraction * s.prefactor_A * hbar * 2 * s.chi0 / (s.particle_density * std::pow(s.particle_size, 4));
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

}  // namespace

TEST_CASE("rate conversions") {
    CHECK(rel_err(rate_to_tangential_v(4.95, meters(1.0)).value(), 4.95 * pi / 180 / 86400) <= 1e-15);
    CHECK(rate_to_tangential_v(4.95, meters(1.0)).value() == doctest::Approx(1.0e-6).epsilon(1e-3));
    CHECK(rate_to_tangential_v(0.0, meters(1.0)).value() == 0.0);
    CHECK(rel_err(rate_to_tangential_v(3.0, meters(2.0)).value(), 2 * rate_to_tangential_v(3.0, meters(1.0)).value()) <=
          1e-15);
    CHECK(rate_to_tangential_v(1.0, meters(1.0)).dimension() == dims::velocity);
    CHECK_THROWS_AS(rate_to_tangential_v(1.0, meters(0.0)), DomainError);

    std::mt19937_64 rng(29);
    for (int i = 0; i < 200; ++i) {
        const double rate = qwheel::test::log_uniform(rng, 1e-3, 1e3);
        const Quantity r = meters(qwheel::test::log_uniform(rng, 0.1, 10.0));
        CHECK(rel_err(tangential_v_to_rate(rate_to_tangential_v(rate, r), r), rate) <= 1e-12);
    }
}

TEST_CASE("design point") {
    const MissionSpec s = MissionSpec::design_point();
    CHECK(s.target_rate == doctest::Approx(4.950355).epsilon(1e-6));
    const MissionReport r = evaluate_mission(s);
    CHECK(rel_err(r.required_tangential_v.value(), 1e-6) <= 1e-12);
    CHECK(rel_err(r.achieved_tangential_v.value(), achieved_by_hand(s)) <= 1e-14);
    CHECK(r.achieved_tangential_v.value() == doctest::Approx(1.0546e-6).epsilon(1e-4));
    CHECK(r.feasible);
    CHECK(r.margin == doctest::Approx(1.0546).epsilon(1e-4));
    CHECK_FALSE(r.solved_unknown.has_value());
}

TEST_CASE("chi = 1e-4 leaves a tenfold gap") {
    MissionSpec s = MissionSpec::design_point();
    s.chi0 = 1e-4;
    const MissionReport r = evaluate_mission(s);
    CHECK_FALSE(r.feasible);
    CHECK(r.margin == doctest::Approx(0.10546).epsilon(1e-4));
    CHECK(r.achieved_tangential_v.value() == doctest::Approx(1.0546e-7).epsilon(1e-4));
}

TEST_CASE("small fractions are infeasible") {
    MissionSpec s = MissionSpec::design_point();
    s.active_mass_fraction = 1e-9;
    const MissionReport r = evaluate_mission(s);
    CHECK_FALSE(r.feasible);
    CHECK(r.achieved_tangential_v.value() < 1e-14);
}

TEST_CASE("feasible is achieved >= required, margin is their ratio") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 200; ++i) {
        MissionSpec s = qwheel::test::random_feasible_spec(rng);
        s.target_rate *= qwheel::test::log_uniform(rng, 0.5, 2.0);
        const MissionReport r = evaluate_mission(s);
        CHECK(r.feasible == (r.achieved_tangential_v.value() >= r.required_tangential_v.value()));
        CHECK(rel_err(r.margin, r.achieved_tangential_v.value() / r.required_tangential_v.value()) <= 1e-15);
    }
}

TEST_CASE("validation lists every bad field") {
    MissionSpec s = MissionSpec::design_point();
    s.particle_size = -1.0;
    s.active_mass_fraction = 1.5;
    s.prefactor_A = 0.0;
    try {
        evaluate_mission(s);
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        const std::string w = e.what();
        CHECK(w.find("particle_size") != std::string::npos);
        CHECK(w.find("active_mass_fraction") != std::string::npos);
        CHECK(w.find("prefactor_A") != std::string::npos);
        CHECK(w.find("chi0") == std::string::npos);
    }
}

TEST_CASE("margin scaling laws") {
    std::mt19937_64 rng(37);
    for (int i = 0; i < 100; ++i) {
        const MissionSpec s = qwheel::test::random_feasible_spec(rng);
        const double base = evaluate_mission(s).margin;
        const double k = qwheel::test::log_uniform(rng, 0.1, 0.9);

        MissionSpec t = s;
        t.chi0 *= k;
        CHECK(rel_err(evaluate_mission(t).margin / base, k) <= 1e-12);
        t = s;
        t.active_mass_fraction *= k;
        CHECK(rel_err(evaluate_mission(t).margin / base, k) <= 1e-12);
        // At fixed density the particle mass falls with a^3 as well: 1/a^4.
        t = s;
        t.particle_size *= k;
        CHECK(rel_err(evaluate_mission(t).margin / base, std::pow(k, -4)) <= 1e-12);
    }
}

TEST_CASE("solve for each unknown at the design point") {
    const MissionSpec s = MissionSpec::design_point();

    const Solution chi = solve_for_unknown(s, Unknown::chi0);
    CHECK(chi.value == doctest::Approx(0.948e-3).epsilon(1e-3));
    CHECK(rel_err(chi.value, chi.analytic_value) <= 1e-8);
    CHECK(chi.residual <= 1e-9);
    CHECK_FALSE(chi.warning.has_value());

    MissionSpec weak = s;
    weak.chi0 = 1e-4;
    const Solution size = solve_for_unknown(weak, Unknown::particle_size);
    CHECK(size.value == doctest::Approx(5.70e-10).epsilon(1e-3));
    CHECK(rel_err(size.value, size.analytic_value) <= 1e-8);
    CHECK_FALSE(size.warning.has_value());

    const Solution fraction = solve_for_unknown(s, Unknown::active_mass_fraction);
    CHECK(fraction.value == doctest::Approx(0.474).epsilon(1e-3));
    CHECK(rel_err(fraction.value, fraction.analytic_value) <= 1e-8);
}

TEST_CASE("solutions substitute back to unit margin") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 50; ++i) {
        const MissionSpec s = qwheel::test::random_feasible_spec(rng);
        for (Unknown u : {Unknown::chi0, Unknown::particle_size, Unknown::active_mass_fraction}) {
            const Solution sol = solve_for_unknown(s, u);
            MissionSpec back = s;
            if (u == Unknown::chi0) back.chi0 = sol.value;
            if (u == Unknown::particle_size) back.particle_size = sol.value;
            if (u == Unknown::active_mass_fraction) back.active_mass_fraction = sol.value;
            CHECK(std::fabs(evaluate_mission(back).margin - 1.0) <= 1e-9);
            CHECK(rel_err(sol.value, sol.analytic_value) <= 1e-8);
        }
    }
}

TEST_CASE("infeasible brackets are reported") {
    MissionSpec s = MissionSpec::design_point();
    s.target_rate *= 1e12;
    try {
        solve_for_unknown(s, Unknown::active_mass_fraction);
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        const std::string w = e.what();
        CHECK(w.find("infeasible for any value in [1e-08, 1]") != std::string::npos);
    }
    CHECK_THROWS_AS(solve_for_unknown(MissionSpec::design_point(), Unknown::chi0, Bracket{1.0, 0.5}), DomainError);
    CHECK_THROWS_AS(solve_for_unknown(MissionSpec::design_point(), Unknown::chi0, Bracket{0.1, 0.5}), DomainError);
}

TEST_CASE("sub-atomic sizes carry a warning") {
    MissionSpec s = MissionSpec::design_point();
    s.chi0 = 1e-4;
    s.target_rate *= 1e4;
    const Solution sol = solve_for_unknown(s, Unknown::particle_size);
    CHECK(sol.value < kSubAtomicSize);
    REQUIRE(sol.warning.has_value());
    CHECK(sol.warning->find("atomic") != std::string::npos);
}

TEST_CASE("unknown names") {
    CHECK(parse_unknown("particle_size") == Unknown::particle_size);
    CHECK(std::string(to_string(Unknown::active_mass_fraction)) == "active_mass_fraction");
    CHECK_THROWS_AS(parse_unknown("rho"), DomainError);
}

TEST_CASE("degenerate sweep matches evaluate_mission") {
    const MissionSpec s = MissionSpec::design_point();
    const auto rows = sweep_rows(SweepGrid::at(s), s);
    REQUIRE(rows.size() == 1);
    const MissionReport r = evaluate_mission(s);
    CHECK(rows[0].dV_m_s == r.achieved_tangential_v.value());
    CHECK(rows[0].feasible == r.feasible);
    CHECK(rel_err(rows[0].dv_m_s, 2.109143634e-6) <= 1e-9);
}

TEST_CASE("sweep order and size scaling") {
    const MissionSpec s = MissionSpec::design_point();
    SweepGrid g = SweepGrid::at(s);
    g.chi0 = {1e-4, 1e-3};
    g.particle_size = {1e-9, 2e-9, 4e-9};
    CHECK(g.combinations() == 6);

    const auto rows = sweep_rows(g, s);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].chi0 == 1e-4);
    CHECK(rows[2].a_m == 4e-9);
    CHECK(rows[3].chi0 == 1e-3);
    CHECK(rows[3].a_m == 1e-9);
    // Recomputed by hand: 2 A hbar chi / (rho a^4).
    CHECK(rel_err(rows[4].dv_m_s, 2 * 1e-2 * hbar * 1e-3 / (1000.0 * std::pow(2e-9, 4))) <= 1e-14);
    CHECK(rel_err(rows[3].dv_m_s / rows[4].dv_m_s, 16.0) <= 1e-12);
    CHECK(rel_err(rows[3].dv_m_s / rows[5].dv_m_s, 256.0) <= 1e-12);

    const auto fixed = sweep_rows(g, s, {SweepMode::fixed_particle_mass, 1, 10'000'000});
    // m = rho (1 nm)^3 held fixed: 2 A hbar chi / (m a).
    CHECK(rel_err(fixed[4].dv_m_s, 2 * 1e-2 * hbar * 1e-3 / (1e-24 * 2e-9)) <= 1e-14);
    CHECK(rel_err(fixed[3].dv_m_s / fixed[4].dv_m_s, 2.0) <= 1e-12);
    CHECK(rel_err(fixed[3].dv_m_s / fixed[5].dv_m_s, 4.0) <= 1e-12);
    CHECK(rel_err(fixed[3].dv_m_s, rows[3].dv_m_s) <= 1e-14);
}

TEST_CASE("sweep CSV output") {
    const MissionSpec s = MissionSpec::design_point();
    SweepGrid g = SweepGrid::at(s);
    g.chi0 = {1e-4, 1e-3};
    g.active_mass_fraction = {0.25, 0.5, 1.0};
    g.prefactor_A = {1e-2, 2e-2};
    std::ostringstream out;
    CHECK(sweep(g, s, out) == 12);
    const auto ls = lines(out.str());
    REQUIRE(ls.size() == 13);
    CHECK(ls[0] == kSweepHeader);
    CHECK(ls[1].rfind("1e-04,1e-09,1000,0.25,0.01,", 0) == 0);
    CHECK(ls[2].rfind("1e-04,1e-09,1000,0.25,0.02,", 0) == 0);
    CHECK(ls[12].find(",true") != std::string::npos);
}

TEST_CASE("sweep cap and empty lists") {
    const MissionSpec s = MissionSpec::design_point();
    SweepGrid g = SweepGrid::at(s);
    g.chi0 = {1e-4, 2e-4, 3e-4};
    g.particle_size = {1e-9, 2e-9};
    try {
        sweep_rows(g, s, {SweepMode::mission, 1, 5});
        FAIL("expected cap rejection");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("6 combinations") != std::string::npos);
    }
    g.prefactor_A.clear();
    CHECK_THROWS_AS(sweep_rows(g, s), DomainError);
    SweepGrid bad = SweepGrid::at(s);
    bad.particle_size = {1e-9, -1e-9};
    CHECK_THROWS_AS(sweep_rows(bad, s, {SweepMode::mission, 2, 100}), DomainError);
}

TEST_CASE("sweep output is identical across thread counts") {
    const MissionSpec s = MissionSpec::design_point();
    SweepGrid g;
    for (int i = 0; i < 5; ++i) g.chi0.push_back(1e-4 * (i + 1));
    for (int i = 0; i < 4; ++i) g.particle_size.push_back(1e-9 * (1 + 0.3 * i));
    g.particle_density = {1000, 2500, 5000};
    g.active_mass_fraction = {0.1, 0.5};
    g.prefactor_A = {1e-3, 1e-2, 1e-1};
    std::ostringstream serial;
    sweep(g, s, serial, {SweepMode::mission, 1, 10'000'000});
    for (unsigned t : {2u, 3u, 7u, 0u}) {
        std::ostringstream par;
        sweep(g, s, par, {SweepMode::mission, t, 10'000'000});
        CHECK(par.str() == serial.str());
    }
}
