#pragma once

// File formats: particle/tensor and mission JSON, maneuver-sequence JSON,
// field time-series CSV, ledger JSON lines and the oracle convergence CSV.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "qwheel/dynamics.hpp"
#include "qwheel/ledger.hpp"
#include "qwheel/material.hpp"
#include "qwheel/mission.hpp"
#include "qwheel/vacuum.hpp"

namespace qwheel {

/// Shortest decimal that round-trips to the same double.
std::string format_number(double v);

/// Reads a whole file; throws ParseError naming the path if unreadable.
std::string read_file(const std::filesystem::path& path);
nlohmann::json read_json_file(const std::filesystem::path& path);

// Tensor and particle objects use the keys chi0 (9 numbers, row-major),
// kappa1, kappa2, kappa3, size_a_m, density_kg_m3, epsilon and orientation
// (9 numbers, row-major).  A particle object carries the tensor keys inline.
nlohmann::json to_json(const MagnetoElectricTensor& t);
MagnetoElectricTensor tensor_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Particle& p);
Particle particle_from_json(const nlohmann::json& j);

/// Mission spec keys are exactly the MissionSpec field names; all required.
nlohmann::json to_json(const MissionSpec& s);
MissionSpec mission_spec_from_json(const nlohmann::json& j);

/// Grid keys are MissionSpec field names mapping to arrays; a missing key
/// takes the single value from `base`.
SweepGrid sweep_grid_from_json(const nlohmann::json& j, const MissionSpec& base);

/// CSV with header t_s,E_x,B_y[,chi0_xy[,kappa1,kappa2,kappa3]].  Without
/// chi0_xy the particle's own tensor is used; absent kappas are 0.
/// ParseError messages carry the line number and column name.
FieldTimeSeries parse_field_series_csv(std::istream& in, Convention fields = Convention::si);
FieldTimeSeries read_field_series_csv(const std::filesystem::path& path, Convention fields = Convention::si);

struct ManeuverSequence {
    std::vector<Particle> particles;
    std::vector<Maneuver> maneuvers;
    Quantity m_total = kilograms(1.0);
};

/// {"M_total_kg": x, "particles": [...], "maneuvers": [...]}.  Maneuver
/// objects have "type" (rotation | aggregation | field_modulation |
/// cavity_modulation), an optional "id" and "particle", and:
///   rotation:          "axis" [3], "angle_rad"
///   aggregation:       "N", "a_m", "direction" [3]
///   field_modulation:  "series": CSV path (relative to `base_dir`)
///   cavity_modulation: "dB2_dt" (G^2/s), "duration_s"
ManeuverSequence sequence_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir,
                                    Convention fields = Convention::si);

/// One object per entry: maneuver_id, type, dp_particles, dp_vacuum, cumulative_v.
void write_ledger_jsonl(const ImpulseLedger& ledger, std::ostream& out);

struct OracleRow {
    int n_per_axis = 0;
    double a_m = 0.0;
    double chi = 0.0;
    double p_kg_m_s = 0.0;
    double effective_A = 0.0;
};

inline constexpr const char* kOracleHeader = "n_per_axis,a_m,chi,p_kg_m_s,effective_A";

std::vector<OracleRow> oracle_study(double chi, const std::vector<double>& sizes_m, const std::vector<int>& n_values,
                                    CutoffConvention cutoff, unsigned threads = 0);
void write_oracle_csv(const std::vector<OracleRow>& rows, std::ostream& out);

}  // namespace qwheel
