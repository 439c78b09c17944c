#include "qwheel/cli.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qwheel/dynamics.hpp"
#include "qwheel/io.hpp"
#include "qwheel/ledger.hpp"
#include "qwheel/mission.hpp"
#include "qwheel/vacuum.hpp"

namespace qwheel::cli {

namespace {

using nlohmann::json;

enum class Format { text, json, csv };

struct Config {
    Format format = Format::text;
    Convention units = Convention::si;
    std::optional<double> prefactor_A;
    CutoffConvention cutoff = CutoffConvention::wavelength_equals_size;
    std::string out_path;

    VacuumModel model() const {
        VacuumModel m;
        if (prefactor_A) m.prefactor_A = *prefactor_A;
        m.cutoff = cutoff;
        return m;
    }
};

// Six significant digits for human-readable output.
std::string text_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void emit_value(const Config& cfg, std::ostream& os, const char* name, const Quantity& q, const char* unit) {
    switch (cfg.format) {
        case Format::text: os << name << " = " << text_number(q.value()) << ' ' << unit << '\n'; break;
        case Format::json: os << json{{"quantity", name}, {"value", q.value()}, {"unit", unit}}.dump() << '\n'; break;
        case Format::csv:
            os << "quantity,value,unit\n" << name << ',' << format_number(q.value()) << ',' << unit << '\n';
            break;
    }
}

Particle xy_particle(double chi, double a, double rho, double eps = 1.0) {
    return Particle(meters(a), kg_per_m3(rho), MagnetoElectricTensor::xy(chi), Mat3::Identity(), eps);
}

void emit_report(const Config& cfg, std::ostream& os, const MissionReport& r) {
    const double req = r.required_tangential_v.value_as(dims::velocity);
    const double ach = r.achieved_tangential_v.value_as(dims::velocity);
    switch (cfg.format) {
        case Format::text:
            os << "required_tangential_v: " << text_number(req) << " m/s\n"
               << "achieved_tangential_v: " << text_number(ach) << " m/s\n"
               << "feasible: " << (r.feasible ? "true" : "false") << '\n'
               << "margin: " << text_number(r.margin) << '\n';
            break;
        case Format::json:
            os << json{{"required_tangential_v", req},
                       {"achieved_tangential_v", ach},
                       {"feasible", r.feasible},
                       {"margin", r.margin},
                       {"unit", "m/s"}}
                      .dump()
               << '\n';
            break;
        case Format::csv:
            os << "required_tangential_v,achieved_tangential_v,feasible,margin\n"
               << format_number(req) << ',' << format_number(ach) << ',' << (r.feasible ? "true" : "false") << ','
               << format_number(r.margin) << '\n';
            break;
    }
}

MissionSpec load_spec(const Config& cfg, const std::string& path) {
    MissionSpec s;
    try {
        s = mission_spec_from_json(read_json_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
    if (cfg.prefactor_A) s.prefactor_A = *cfg.prefactor_A;
    return s;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Config cfg;
    CLI::App app{"Momentum transfer between magneto-electric particles and zero-point fluctuations", "qwheel"};
    app.fallthrough();
    app.require_subcommand(1, 1);

    std::string format = "text", units = "si", cutoff = "wavelength";
    double a_override = 0.0;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--units", units, "Convention of field inputs")->check(CLI::IsMember({"si", "gaussian"}));
    auto* a_opt = app.add_option("--A", a_override, "Override the prefactor A (> 0)")->check(CLI::PositiveNumber);
    app.add_option("--cutoff", cutoff, "Size cutoff convention")
        ->check(CLI::IsMember({"wavelength", "half-wavelength", "reduced-wavelength"}));
    app.add_option("--out", cfg.out_path, "Write results to this file instead of standard output");

    double chi = 0.0, a = 0.0, rho = 0.0, eps = 1.0;
    std::uint64_t n_count = 1;
    std::string spec_path, series_path, particle_path, grid_path, unknown, mode = "mission";
    std::vector<double> sizes{1e-9, 2e-9, 4e-9, 8e-9};
    std::vector<int> n_values{16, 32, 64};
    unsigned threads = 0;
    std::uint64_t cap = 10'000'000;
    std::optional<double> lo, hi;

    auto* rot = app.add_subcommand("delta-v-rot", "Velocity gain of one particle rotated by pi");
    rot->add_option("--chi", chi, "Intrinsic chi0_xy")->required();
    rot->add_option("--a", a, "Particle size, m")->required();
    rot->add_option("--rho", rho, "Density, kg/m^3")->required();

    auto* agg = app.add_subcommand("delta-v-agg", "Velocity gain from aggregating N particles");
    agg->add_option("--chi", chi, "Intrinsic chi0_xy")->required();
    agg->add_option("--a", a, "Particle size, m")->required();
    agg->add_option("--rho", rho, "Density, kg/m^3")->required();
    agg->add_option("--N", n_count, "Number of particles merged")->required()->check(CLI::PositiveNumber);

    auto* vac = app.add_subcommand("vacuum-momentum", "Closed-form vacuum momentum A hbar chi / a");
    vac->add_option("--chi", chi, "chi_xy")->required();
    vac->add_option("--a", a, "Particle size, m")->required();

    auto* orc = app.add_subcommand("oracle", "Mode-summation convergence study (CSV)");
    double oracle_chi = 1e-3;
    orc->add_option("--chi", oracle_chi, "chi_xy");
    orc->add_option("--a", sizes, "Particle sizes, m")->delimiter(',');
    orc->add_option("--n", n_values, "Grid points per half-axis")->delimiter(',');
    orc->add_option("--threads", threads, "Worker threads (0 = all cores)");

    auto* frc = app.add_subcommand("force-decompose", "Direct force and its three-term decomposition");
    frc->add_option("--series", series_path, "Field time-series CSV")->required();
    frc->add_option("--particle", particle_path, "Particle JSON (otherwise --chi/--eps/--a/--rho)");
    double force_chi = 0.0, force_a = 1e-9, force_rho = 1000.0;
    frc->add_option("--chi", force_chi, "chi0_xy");
    frc->add_option("--eps", eps, "Dielectric constant");
    frc->add_option("--a", force_a, "Particle size, m");
    frc->add_option("--rho", force_rho, "Density, kg/m^3");

    auto* mis = app.add_subcommand("mission", "Evaluate a satellite attitude-correction design");
    mis->add_option("--spec", spec_path, "MissionSpec JSON")->required();

    auto* slv = app.add_subcommand("solve", "Solve a mission spec for one unknown");
    slv->add_option("--spec", spec_path, "MissionSpec JSON")->required();
    slv->add_option("--unknown", unknown, "chi0 | particle_size | active_mass_fraction")
        ->required()
        ->check(CLI::IsMember({"chi0", "particle_size", "active_mass_fraction"}));
    slv->add_option("--lo", lo, "Bracket lower end");
    slv->add_option("--hi", hi, "Bracket upper end");

    auto* swp = app.add_subcommand("sweep", "Cartesian parameter sweep (CSV)");
    swp->add_option("--spec", spec_path, "Base MissionSpec JSON")->required();
    swp->add_option("--grid", grid_path, "Grid JSON: field name -> list of values");
    swp->add_option("--mode", mode, "mission | fixed-particle-mass")
        ->check(CLI::IsMember({"mission", "fixed-particle-mass"}));
    swp->add_option("--threads", threads, "Worker threads (0 = all cores)");
    swp->add_option("--cap", cap, "Maximum number of grid points");

    auto* led = app.add_subcommand("ledger", "Run a maneuver sequence and print its impulse ledger");
    led->add_option("--spec", spec_path, "Maneuver sequence JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    cfg.format = format == "json" ? Format::json : format == "csv" ? Format::csv : Format::text;
    cfg.units = units == "gaussian" ? Convention::gaussian : Convention::si;
    if (a_opt->count()) cfg.prefactor_A = a_override;

    std::ostringstream os;
    try {
        cfg.cutoff = parse_cutoff(cutoff);
        const VacuumModel model = cfg.model();

        if (rot->parsed()) {
            emit_value(cfg, os, "delta_v_rotation", delta_v_rotation(xy_particle(chi, a, rho), model), "m/s");
        } else if (agg->parsed()) {
            emit_value(cfg, os, "delta_v_aggregation",
                       delta_v_aggregation(meters(a), kg_per_m3(rho), chi, n_count, model), "m/s");
        } else if (vac->parsed()) {
            emit_value(cfg, os, "vacuum_momentum", vacuum_momentum_closed_form(chi, meters(a), model), "kg*m/s");
        } else if (orc->parsed()) {
            const auto rows = oracle_study(oracle_chi, sizes, n_values, cfg.cutoff, threads);
            if (cfg.format == Format::json) {
                json arr = json::array();
                for (const auto& r : rows) {
                    arr.push_back({{"n_per_axis", r.n_per_axis},
                                   {"a_m", r.a_m},
                                   {"chi", r.chi},
                                   {"p_kg_m_s", r.p_kg_m_s},
                                   {"effective_A", r.effective_A}});
                }
                os << arr.dump() << '\n';
            } else if (cfg.format == Format::csv) {
                write_oracle_csv(rows, os);
            } else {
                for (const auto& r : rows) {
                    os << "n=" << r.n_per_axis << " a=" << text_number(r.a_m) << " m p=" << text_number(r.p_kg_m_s)
                       << " kg*m/s effective_A=" << text_number(r.effective_A) << '\n';
                }
            }
        } else if (frc->parsed()) {
            const Particle p = particle_path.empty() ? xy_particle(force_chi, force_a, force_rho, eps)
                                                     : particle_from_json(read_json_file(particle_path));
            const FieldTimeSeries s = read_field_series_csv(series_path, cfg.units);
            const QuantitySeries direct = force_direct(p, s);
            const ForceDecomposition d = force_decomposed(p, s);
            const char* unit = "erg/(cm^3*s)";
            if (cfg.format == Format::json) {
                json j = {{"unit", unit},
                          {"t_s", s.t()},
                          {"F_direct", direct.values},
                          {"F_dielectric", d.dielectric.samples.values},
                          {"F_classical_me", d.classical_me.samples.values},
                          {"F_chi_dot", d.chi_dot.samples.values}};
                os << j.dump() << '\n';
            } else {
                const bool csv = cfg.format == Format::csv;
                auto num = [&](double v) { return csv ? format_number(v) : text_number(v); };
                os << "t_s,F_direct,F_dielectric,F_classical_me,F_chi_dot\n";
                for (std::size_t i = 0; i < s.size(); ++i) {
                    os << num(s.t()[i]) << ',' << num(direct.values[i]) << ',' << num(d.dielectric.samples.values[i])
                       << ',' << num(d.classical_me.samples.values[i]) << ',' << num(d.chi_dot.samples.values[i])
                       << '\n';
                }
            }
        } else if (mis->parsed()) {
            emit_report(cfg, os, evaluate_mission(load_spec(cfg, spec_path)));
        } else if (slv->parsed()) {
            const MissionSpec s = load_spec(cfg, spec_path);
            std::optional<Bracket> bracket;
            if (lo || hi) {
                const Bracket def = default_bracket(parse_unknown(unknown));
                bracket = Bracket{lo.value_or(def.lo), hi.value_or(def.hi)};
            }
            const Solution sol = solve_for_unknown(s, parse_unknown(unknown), bracket);
            if (sol.warning) err << "warning: " << *sol.warning << '\n';
            switch (cfg.format) {
                case Format::text:
                    os << unknown << " = " << text_number(sol.value) << " (analytic " << text_number(sol.analytic_value)
                       << ", residual " << text_number(sol.residual) << ")\n";
                    break;
                case Format::json: {
                    json j = {{"unknown", unknown},
                              {"value", sol.value},
                              {"analytic_value", sol.analytic_value},
                              {"residual", sol.residual}};
                    if (sol.warning) j["warning"] = *sol.warning;
                    os << j.dump() << '\n';
                    break;
                }
                case Format::csv:
                    os << "unknown,value,analytic_value,residual\n"
                       << unknown << ',' << format_number(sol.value) << ',' << format_number(sol.analytic_value) << ','
                       << format_number(sol.residual) << '\n';
                    break;
            }
        } else if (swp->parsed()) {
            const MissionSpec base = load_spec(cfg, spec_path);
            SweepGrid grid = SweepGrid::at(base);
            if (!grid_path.empty()) grid = sweep_grid_from_json(read_json_file(grid_path), base);
            SweepOptions opt;
            opt.mode = mode == "fixed-particle-mass" ? SweepMode::fixed_particle_mass : SweepMode::mission;
            opt.threads = threads;
            opt.cap = cap;
            if (cfg.format == Format::json) {
                json arr = json::array();
                for (const auto& r : sweep_rows(grid, base, opt)) {
                    arr.push_back({{"chi0", r.chi0},
                                   {"a_m", r.a_m},
                                   {"rho_kg_m3", r.rho_kg_m3},
                                   {"fraction", r.fraction},
                                   {"A", r.A},
                                   {"dv_m_s", r.dv_m_s},
                                   {"dV_m_s", r.dV_m_s},
                                   {"rate_deg_day", r.rate_deg_day},
                                   {"feasible", r.feasible}});
                }
                os << arr.dump() << '\n';
            } else {
                sweep(grid, base, os, opt);
            }
        } else if (led->parsed()) {
            const std::filesystem::path path(spec_path);
            ManeuverSequence seq = sequence_from_json(read_json_file(path), path.parent_path(), cfg.units);
            const ImpulseLedger ledger = run_maneuver_sequence(seq.particles, seq.maneuvers, seq.m_total, model);
            if (cfg.format == Format::text) {
                for (const auto& e : ledger.entries()) {
                    os << e.maneuver_id << ' ' << e.type << " dp_particles=(" << text_number(e.dp_particles.x())
                       << ", " << text_number(e.dp_particles.y()) << ", " << text_number(e.dp_particles.z())
                       << ") kg*m/s cumulative_v=(" << text_number(e.cumulative_v.x()) << ", "
                       << text_number(e.cumulative_v.y()) << ", " << text_number(e.cumulative_v.z()) << ") m/s\n";
                }
            } else if (cfg.format == Format::csv) {
                os << "maneuver_id,type,dp_particles_x,dp_particles_y,dp_particles_z,dp_vacuum_x,dp_vacuum_y,"
                      "dp_vacuum_z,cumulative_v_x,cumulative_v_y,cumulative_v_z\n";
                for (const auto& e : ledger.entries()) {
                    os << e.maneuver_id << ',' << e.type;
                    for (const Vec3* v : {&e.dp_particles, &e.dp_vacuum, &e.cumulative_v}) {
                        for (int i = 0; i < 3; ++i) os << ',' << format_number((*v)(i));
                    }
                    os << '\n';
                }
            } else {
                write_ledger_jsonl(ledger, os);
            }
        }
    } catch (const ManeuverError& e) {
        // Entries booked before the failure are still reported.
        if (cfg.format == Format::json) write_ledger_jsonl(e.partial_ledger(), out);
        err << "error: " << e.what() << '\n';
        return kDomainError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kDomainError;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kDomainError;
    }

    if (cfg.out_path.empty()) {
        out << os.str();
    } else {
        std::ofstream file(cfg.out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot write " << cfg.out_path << '\n';
            return kDomainError;
        }
        file << os.str();
    }
    return kOk;
}

}  // namespace qwheel::cli
