#pragma once

// Satellite attitude-correction planner.
//
// One maneuver cycle is a single pi-rotation of all active particles; the
// achieved tangential velocity is delta_v_rotation scaled by the active
// mass fraction.  Sustained rates from repeated cycling are not modelled.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qwheel/quantities.hpp"

namespace qwheel {

struct MissionSpec {
    double target_rate = 0.0;           ///< deg/day
    double wheel_radius = 1.0;          ///< m
    double satellite_mass = 1.0;        ///< kg
    double active_mass_fraction = 0.5;  ///< (0, 1]
    double particle_size = 1e-9;        ///< m
    double particle_density = 1000.0;   ///< kg/m^3
    double chi0 = 1e-3;
    double prefactor_A = 1e-2;

    /// Throws DomainError listing every invalid field.
    void validate() const;

    /// chi0 = 1e-3, 1 nm, 1 g/cm^3, half the mass active, A = 1e-2, and the
    /// rate equivalent to 1 um/s at 1 m.
    static MissionSpec design_point();
};

struct MissionReport {
    Quantity required_tangential_v;
    Quantity achieved_tangential_v;
    bool feasible = false;
    double margin = 0.0;
    std::optional<std::pair<std::string, double>> solved_unknown;
};

/// v = rate (pi / 180) / 86400 * radius.
Quantity rate_to_tangential_v(double rate_deg_per_day, const Quantity& radius);
/// Inverse of rate_to_tangential_v, deg/day.
double tangential_v_to_rate(const Quantity& v, const Quantity& radius);

MissionReport evaluate_mission(const MissionSpec& spec);

enum class Unknown : std::uint8_t { chi0, particle_size, active_mass_fraction };

const char* to_string(Unknown u);
Unknown parse_unknown(const std::string& name);

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
};

/// [1e-8, 1] for chi0 and fraction, [1e-11 m, 1e-6 m] for size.
Bracket default_bracket(Unknown u);

struct Solution {
    Unknown unknown = Unknown::chi0;
    double value = 0.0;
    double analytic_value = 0.0;  ///< closed-form inversion, for cross-checking
    double residual = 0.0;        ///< |achieved / required - 1| at `value`
    int iterations = 0;
    std::optional<std::string> warning;
};

/// Sizes below this are returned with a plausibility warning.
inline constexpr double kSubAtomicSize = 1e-10;

/// Value of `unknown` (other fields of `spec` fixed, its own field ignored)
/// for which achieved == required.  Log-space bisection; the residual is
/// at most 1e-9.  Throws DomainError ("infeasible for any value in
/// [lo, hi]") when the bracket holds no root.
Solution solve_for_unknown(const MissionSpec& spec, Unknown unknown, std::optional<Bracket> bracket = std::nullopt);

/// Closed-form inversion of achieved = f A hbar 2 chi / (rho a^4).
double analytic_inversion(const MissionSpec& spec, Unknown unknown);

/// Per-parameter value lists; the Cartesian product is swept in
/// lexicographic order chi0, particle_size, particle_density,
/// active_mass_fraction, prefactor_A (last varies fastest).
struct SweepGrid {
    std::vector<double> chi0;
    std::vector<double> particle_size;
    std::vector<double> particle_density;
    std::vector<double> active_mass_fraction;
    std::vector<double> prefactor_A;

    /// Single-point grid at the values of `spec`.
    static SweepGrid at(const MissionSpec& spec);
    std::uint64_t combinations() const;
};

enum class SweepMode : std::uint8_t {
    /// evaluate_mission at each point: fixed density, dv ~ 1/a^4.
    mission,
    /// dv = A hbar 2 chi / (m a) with m = rho * base particle_size^3 held
    /// fixed while a varies: dv ~ 1/a.
    fixed_particle_mass,
};

struct SweepOptions {
    SweepMode mode = SweepMode::mission;
    unsigned threads = 1;  ///< 0 = hardware concurrency
    std::uint64_t cap = 10'000'000;
};

struct SweepRow {
    double chi0, a_m, rho_kg_m3, fraction, A;
    double dv_m_s, dV_m_s, rate_deg_day;
    bool feasible;
};

inline constexpr const char* kSweepHeader = "chi0,a_m,rho_kg_m3,fraction,A,dv_m_s,dV_m_s,rate_deg_day,feasible";

/// Evaluates every grid point; the row order does not depend on `threads`.
/// `base` supplies target_rate, wheel_radius and satellite_mass.
std::vector<SweepRow> sweep_rows(const SweepGrid& grid, const MissionSpec& base, const SweepOptions& options = {});

/// Writes kSweepHeader and one CSV row per point; returns the row count.
std::uint64_t sweep(const SweepGrid& grid, const MissionSpec& base, std::ostream& out,
                    const SweepOptions& options = {});

}  // namespace qwheel
