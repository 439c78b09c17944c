#include "qwheel/mission.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <ostream>
#include <thread>

#include "qwheel/dynamics.hpp"
#include "qwheel/io.hpp"
#include "qwheel/material.hpp"

namespace qwheel {

namespace {

constexpr double kSecondsPerDay = 86400.0;
constexpr double kRadPerDeg = std::numbers::pi / 180.0;

struct Velocities {
    Quantity dv;  // per particle, one pi-rotation
    Quantity dV;  // payload
};

Velocities mission_velocities(const MissionSpec& s) {
    const Particle p(meters(s.particle_size), kg_per_m3(s.particle_density), MagnetoElectricTensor::xy(s.chi0));
    const Quantity dv = delta_v_rotation(p, VacuumModel{s.prefactor_A});
    const Quantity total = kilograms(s.satellite_mass);
    return {dv, payload_delta_v(dv, s.active_mass_fraction * total, total)};
}

double& field_of(MissionSpec& s, Unknown u) {
    switch (u) {
        case Unknown::chi0: return s.chi0;
        case Unknown::particle_size: return s.particle_size;
        case Unknown::active_mass_fraction: return s.active_mass_fraction;
    }
    return s.chi0;
}

}  // namespace

void MissionSpec::validate() const {
    std::string bad;
    auto check = [&](bool ok, const char* name, double v) {
        if (!ok) bad += std::string(bad.empty() ? "" : "; ") + name + " = " + format_number(v);
    };
    auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
    check(positive(target_rate), "target_rate", target_rate);
    check(positive(wheel_radius), "wheel_radius", wheel_radius);
    check(positive(satellite_mass), "satellite_mass", satellite_mass);
    check(positive(active_mass_fraction) && active_mass_fraction <= 1.0, "active_mass_fraction",
          active_mass_fraction);
    check(positive(particle_size), "particle_size", particle_size);
    check(positive(particle_density), "particle_density", particle_density);
    check(positive(chi0) && chi0 <= 1.0, "chi0", chi0);
    check(positive(prefactor_A), "prefactor_A", prefactor_A);
    if (!bad.empty()) throw DomainError("invalid mission spec: " + bad);
}

MissionSpec MissionSpec::design_point() {
    MissionSpec s;
    s.wheel_radius = 1.0;
    s.target_rate = tangential_v_to_rate(meters_per_second(1e-6), meters(s.wheel_radius));
    s.satellite_mass = 100.0;
    s.active_mass_fraction = 0.5;
    s.particle_size = 1e-9;
    s.particle_density = 1000.0;
    s.chi0 = 1e-3;
    s.prefactor_A = 1e-2;
    return s;
}

Quantity rate_to_tangential_v(double rate_deg_per_day, const Quantity& radius) {
    const double r = radius.value_as(dims::length, Convention::si);
    if (!(r > 0.0)) throw DomainError("radius must be positive");
    const Quantity omega{rate_deg_per_day * kRadPerDeg / kSecondsPerDay, dims::rate};
    return omega * radius;
}

double tangential_v_to_rate(const Quantity& v, const Quantity& radius) {
    const double r = radius.value_as(dims::length, Convention::si);
    if (!(r > 0.0)) throw DomainError("radius must be positive");
    const Quantity omega = v / radius;
    return omega.value_as(dims::rate) * kSecondsPerDay / kRadPerDeg;
}

MissionReport evaluate_mission(const MissionSpec& spec) {
    spec.validate();
    const Velocities v = mission_velocities(spec);
    MissionReport r;
    r.required_tangential_v = rate_to_tangential_v(spec.target_rate, meters(spec.wheel_radius));
    r.achieved_tangential_v = v.dV;
    r.margin = (r.achieved_tangential_v / r.required_tangential_v).value_as(dims::none);
    r.feasible = !(r.achieved_tangential_v < r.required_tangential_v);
    return r;
}

const char* to_string(Unknown u) {
    switch (u) {
        case Unknown::chi0: return "chi0";
        case Unknown::particle_size: return "particle_size";
        case Unknown::active_mass_fraction: return "active_mass_fraction";
    }
    return "?";
}

Unknown parse_unknown(const std::string& name) {
    if (name == "chi0") return Unknown::chi0;
    if (name == "particle_size") return Unknown::particle_size;
    if (name == "active_mass_fraction") return Unknown::active_mass_fraction;
    throw DomainError("unknown must be chi0, particle_size or active_mass_fraction, got '" + name + "'");
}

Bracket default_bracket(Unknown u) {
    if (u == Unknown::particle_size) return {1e-11, 1e-6};
    return {1e-8, 1.0};
}

double analytic_inversion(const MissionSpec& s, Unknown u) {
    const double required = rate_to_tangential_v(s.target_rate, meters(s.wheel_radius)).value();
    const double two_a_hbar = 2.0 * s.prefactor_A * constants::hbar_si;
    const double a4 = std::pow(s.particle_size, 4);
    switch (u) {
        case Unknown::chi0: return required * s.particle_density * a4 / (two_a_hbar * s.active_mass_fraction);
        case Unknown::active_mass_fraction: return required * s.particle_density * a4 / (two_a_hbar * s.chi0);
        case Unknown::particle_size:
            return std::pow(two_a_hbar * s.chi0 * s.active_mass_fraction / (s.particle_density * required), 0.25);
    }
    return 0.0;
}

Solution solve_for_unknown(const MissionSpec& spec, Unknown unknown, std::optional<Bracket> bracket) {
    const Bracket b = bracket.value_or(default_bracket(unknown));
    if (!(b.lo > 0.0) || !(b.hi > b.lo)) {
        throw DomainError("bracket must satisfy 0 < lo < hi, got [" + format_number(b.lo) + ", " +
                          format_number(b.hi) + "]");
    }

    MissionSpec trial = spec;
    auto log_margin = [&](double x) {
        field_of(trial, unknown) = x;
        return std::log(evaluate_mission(trial).margin);
    };

    double lo = b.lo, hi = b.hi;
    double g_lo = log_margin(lo);
    const double g_hi = log_margin(hi);
    if (g_lo == 0.0) hi = lo;
    if (g_hi == 0.0) lo = hi;
    if (lo != hi && (g_lo > 0.0) == (g_hi > 0.0)) {
        throw DomainError(std::string("infeasible for any value in [") + format_number(b.lo) + ", " +
                          format_number(b.hi) + "] of " + to_string(unknown));
    }

    Solution sol;
    sol.unknown = unknown;
    while (lo != hi && sol.iterations < 400) {
        const double mid = std::sqrt(lo) * std::sqrt(hi);
        if (!(mid > lo && mid < hi)) break;
        ++sol.iterations;
        const double g = log_margin(mid);
        if (g == 0.0) {
            lo = hi = mid;
        } else if ((g > 0.0) == (g_lo > 0.0)) {
            lo = mid;
            g_lo = g;
        } else {
            hi = mid;
        }
    }
    // Pick the endpoint with the smaller residual.
    const double r_lo = std::fabs(std::expm1(log_margin(lo)));
    const double r_hi = std::fabs(std::expm1(log_margin(hi)));
    sol.value = r_lo <= r_hi ? lo : hi;
    sol.residual = std::min(r_lo, r_hi);
    sol.analytic_value = analytic_inversion(spec, unknown);
    if (unknown == Unknown::particle_size && sol.value < kSubAtomicSize) {
        sol.warning = "solved particle size " + format_number(sol.value) +
                      " m is below atomic scale (1e-10 m); physically implausible";
    }
    return sol;
}

SweepGrid SweepGrid::at(const MissionSpec& s) {
    return {{s.chi0}, {s.particle_size}, {s.particle_density}, {s.active_mass_fraction}, {s.prefactor_A}};
}

std::uint64_t SweepGrid::combinations() const {
    std::uint64_t n = 1;
    for (const auto* list : {&chi0, &particle_size, &particle_density, &active_mass_fraction, &prefactor_A}) {
        if (list->empty()) return 0;
        if (n > UINT64_MAX / list->size()) return UINT64_MAX;
        n *= list->size();
    }
    return n;
}

namespace {

SweepRow evaluate_point(const SweepGrid& g, const MissionSpec& base, SweepMode mode, std::uint64_t index) {
    // Last list varies fastest.
    std::uint64_t rest = index;
    const double A = g.prefactor_A[rest % g.prefactor_A.size()];
    rest /= g.prefactor_A.size();
    const double fraction = g.active_mass_fraction[rest % g.active_mass_fraction.size()];
    rest /= g.active_mass_fraction.size();
    const double rho = g.particle_density[rest % g.particle_density.size()];
    rest /= g.particle_density.size();
    const double a = g.particle_size[rest % g.particle_size.size()];
    rest /= g.particle_size.size();
    const double chi = g.chi0[rest];

    MissionSpec s = base;
    s.chi0 = chi;
    s.particle_size = a;
    s.particle_density = rho;
    s.active_mass_fraction = fraction;
    s.prefactor_A = A;
    s.validate();

    Quantity dv, dV;
    if (mode == SweepMode::mission) {
        const Velocities v = mission_velocities(s);
        dv = v.dv;
        dV = v.dV;
    } else {
        const Quantity m = kg_per_m3(rho) * pow(meters(base.particle_size), 3);
        dv = A * constants::hbar * (2.0 * chi) / (m * meters(a));
        const Quantity total = kilograms(s.satellite_mass);
        dV = payload_delta_v(dv, fraction * total, total);
    }
    const Quantity radius = meters(s.wheel_radius);
    const Quantity required = rate_to_tangential_v(s.target_rate, radius);
    return {chi, a, rho, fraction, A, dv.value_as(dims::velocity), dV.value_as(dims::velocity),
            tangential_v_to_rate(dV, radius), !(dV < required)};
}

}  // namespace

std::vector<SweepRow> sweep_rows(const SweepGrid& grid, const MissionSpec& base, const SweepOptions& options) {
    const std::uint64_t n = grid.combinations();
    if (n == 0) throw DomainError("sweep grid has an empty parameter list");
    if (n > options.cap) {
        throw DomainError("sweep has " + std::to_string(n) + " combinations, above the cap of " +
                          std::to_string(options.cap));
    }

    std::vector<SweepRow> rows(n);
    unsigned workers = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, n));

    std::vector<std::exception_ptr> failures(workers);
    auto work = [&](unsigned w) {
        const std::uint64_t begin = n * w / workers;
        const std::uint64_t end = n * (w + 1) / workers;
        try {
            for (std::uint64_t i = begin; i < end; ++i) rows[i] = evaluate_point(grid, base, options.mode, i);
        } catch (...) {
            failures[w] = std::current_exception();
        }
    };
    if (workers <= 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }
    for (const auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }
    return rows;
}

std::uint64_t sweep(const SweepGrid& grid, const MissionSpec& base, std::ostream& out, const SweepOptions& options) {
    const std::vector<SweepRow> rows = sweep_rows(grid, base, options);
    out << kSweepHeader << '\n';
    for (const auto& r : rows) {
        out << format_number(r.chi0) << ',' << format_number(r.a_m) << ',' << format_number(r.rho_kg_m3) << ','
            << format_number(r.fraction) << ',' << format_number(r.A) << ',' << format_number(r.dv_m_s) << ','
            << format_number(r.dV_m_s) << ',' << format_number(r.rate_deg_day) << ','
            << (r.feasible ? "true" : "false") << '\n';
    }
    return rows.size();
}

}  // namespace qwheel
