#include "qwheel/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace qwheel {

using nlohmann::json;

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

json read_json_file(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

namespace {

const json& require(const json& j, const char* key) {
    if (!j.is_object()) throw ParseError("expected a JSON object");
    const auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
    return *it;
}

double number(const json& j, const char* key) {
    const json& v = require(j, key);
    if (!v.is_number()) throw ParseError(std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
    return j.contains(key) ? number(j, key) : fallback;
}

Mat3 matrix(const json& j, const char* key) {
    const json& v = require(j, key);
    if (!v.is_array() || v.size() != 9) throw ParseError(std::string("field '") + key + "' must be 9 numbers");
    Mat3 m;
    for (int i = 0; i < 9; ++i) {
        if (!v[static_cast<std::size_t>(i)].is_number()) {
            throw ParseError(std::string("field '") + key + "[" + std::to_string(i) + "]' must be a number");
        }
        m(i / 3, i % 3) = v[static_cast<std::size_t>(i)].get<double>();
    }
    return m;
}

Vec3 vector3(const json& j, const char* key) {
    const json& v = require(j, key);
    if (!v.is_array() || v.size() != 3) throw ParseError(std::string("field '") + key + "' must be 3 numbers");
    Vec3 out;
    for (int i = 0; i < 3; ++i) {
        if (!v[static_cast<std::size_t>(i)].is_number()) {
            throw ParseError(std::string("field '") + key + "' must be 3 numbers");
        }
        out(i) = v[static_cast<std::size_t>(i)].get<double>();
    }
    return out;
}

json row_major(const Mat3& m) {
    json a = json::array();
    for (int i = 0; i < 9; ++i) a.push_back(m(i / 3, i % 3));
    return a;
}

json array3(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

std::optional<std::size_t> optional_index(const json& j) {
    if (!j.contains("particle")) return std::nullopt;
    const json& v = j["particle"];
    if (!v.is_number_unsigned()) throw ParseError("field 'particle' must be a non-negative integer");
    return v.get<std::size_t>();
}

}  // namespace

json to_json(const MagnetoElectricTensor& t) {
    return {{"chi0", row_major(t.chi0)}, {"kappa1", t.kappa1}, {"kappa2", t.kappa2}, {"kappa3", t.kappa3}};
}

MagnetoElectricTensor tensor_from_json(const json& j) {
    MagnetoElectricTensor t;
    t.chi0 = matrix(j, "chi0");
    t.kappa1 = number_or(j, "kappa1", 0.0);
    t.kappa2 = number_or(j, "kappa2", 0.0);
    t.kappa3 = number_or(j, "kappa3", 0.0);
    t.validate();
    return t;
}

json to_json(const Particle& p) {
    json j = to_json(p.tensor());
    j["size_a_m"] = p.size().value();
    j["density_kg_m3"] = p.density().value();
    j["epsilon"] = p.epsilon();
    j["orientation"] = row_major(p.orientation());
    return j;
}

Particle particle_from_json(const json& j) {
    const Mat3 orientation = j.contains("orientation") ? matrix(j, "orientation") : Mat3::Identity();
    return Particle(meters(number(j, "size_a_m")), kg_per_m3(number(j, "density_kg_m3")), tensor_from_json(j),
                    orientation, number_or(j, "epsilon", 1.0));
}

json to_json(const MissionSpec& s) {
    return {{"target_rate", s.target_rate},
            {"wheel_radius", s.wheel_radius},
            {"satellite_mass", s.satellite_mass},
            {"active_mass_fraction", s.active_mass_fraction},
            {"particle_size", s.particle_size},
            {"particle_density", s.particle_density},
            {"chi0", s.chi0},
            {"prefactor_A", s.prefactor_A}};
}

MissionSpec mission_spec_from_json(const json& j) {
    static const char* const kFields[] = {"target_rate",   "wheel_radius",     "satellite_mass", "active_mass_fraction",
                                          "particle_size", "particle_density", "chi0",           "prefactor_A"};
    if (!j.is_object()) throw ParseError("mission spec must be a JSON object");
    for (const auto& [key, _] : j.items()) {
        bool known = false;
        for (const char* f : kFields) known = known || key == f;
        if (!known) throw ParseError("unknown mission spec field '" + key + "'");
    }
    MissionSpec s;
    s.target_rate = number(j, "target_rate");
    s.wheel_radius = number(j, "wheel_radius");
    s.satellite_mass = number(j, "satellite_mass");
    s.active_mass_fraction = number(j, "active_mass_fraction");
    s.particle_size = number(j, "particle_size");
    s.particle_density = number(j, "particle_density");
    s.chi0 = number(j, "chi0");
    s.prefactor_A = number(j, "prefactor_A");
    return s;
}

SweepGrid sweep_grid_from_json(const json& j, const MissionSpec& base) {
    if (!j.is_object()) throw ParseError("sweep grid must be a JSON object");
    SweepGrid g = SweepGrid::at(base);
    const std::pair<const char*, std::vector<double>*> lists[] = {
        {"chi0", &g.chi0},
        {"particle_size", &g.particle_size},
        {"particle_density", &g.particle_density},
        {"active_mass_fraction", &g.active_mass_fraction},
        {"prefactor_A", &g.prefactor_A},
    };
    for (const auto& [key, _] : j.items()) {
        bool known = false;
        for (const auto& [name, list] : lists) known = known || key == name;
        if (!known) throw ParseError("unknown sweep grid key '" + key + "'");
    }
    for (const auto& [name, list] : lists) {
        if (!j.contains(name)) continue;
        const json& v = j[name];
        if (!v.is_array() || v.empty()) throw ParseError(std::string("sweep grid '") + name + "' must be a non-empty array");
        list->clear();
        for (const auto& x : v) {
            if (!x.is_number()) throw ParseError(std::string("sweep grid '") + name + "' must hold numbers");
            list->push_back(x.get<double>());
        }
    }
    return g;
}

namespace {

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

FieldTimeSeries parse_field_series_csv(std::istream& in, Convention fields) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (header.empty() && std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) header = split(line);
    }
    if (header.empty()) throw ParseError("field series CSV is empty");

    static const char* const kColumns[] = {"t_s", "E_x", "B_y", "chi0_xy", "kappa1", "kappa2", "kappa3"};
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < header.size(); ++i) {
        bool known = false;
        for (const char* c : kColumns) known = known || header[i] == c;
        if (!known) throw ParseError("line " + std::to_string(line_no) + ": unknown column '" + header[i] + "'");
        if (!pos.emplace(header[i], i).second) {
            throw ParseError("line " + std::to_string(line_no) + ": duplicate column '" + header[i] + "'");
        }
    }
    for (const char* c : {"t_s", "E_x", "B_y"}) {
        if (!pos.count(c)) throw ParseError("line " + std::to_string(line_no) + ": missing column '" + c + "'");
    }
    const bool has_chi = pos.count("chi0_xy") > 0;
    for (const char* k : {"kappa1", "kappa2", "kappa3"}) {
        if (pos.count(k) && !has_chi) {
            throw ParseError("line " + std::to_string(line_no) + ": column '" + k + "' needs chi0_xy");
        }
    }

    std::vector<double> t, e, b;
    std::vector<ChiParams> chi;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const std::vector<std::string> cells = split(line);
        if (cells.size() != header.size()) {
            throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                             " fields, got " + std::to_string(cells.size()));
        }
        auto cell = [&](const char* name, double fallback) {
            const auto it = pos.find(name);
            if (it == pos.end()) return fallback;
            const std::string& text = cells[it->second];
            double v = 0.0;
            const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
            if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
                throw ParseError("line " + std::to_string(line_no) + ", column " + name + ": not a number '" + text +
                                 "'");
            }
            return v;
        };
        t.push_back(cell("t_s", 0.0));
        e.push_back(cell("E_x", 0.0));
        b.push_back(cell("B_y", 0.0));
        if (has_chi) chi.push_back({cell("chi0_xy", 0.0), cell("kappa1", 0.0), cell("kappa2", 0.0), cell("kappa3", 0.0)});
    }
    try {
        return FieldTimeSeries(std::move(t), std::move(e), std::move(b),
                               has_chi ? std::optional(std::move(chi)) : std::nullopt, fields);
    } catch (const DomainError& err) {
        throw ParseError(std::string("field series CSV: ") + err.what());
    }
}

FieldTimeSeries read_field_series_csv(const std::filesystem::path& path, Convention fields) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path.string());
    try {
        return parse_field_series_csv(in, fields);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

ManeuverSequence sequence_from_json(const json& j, const std::filesystem::path& base_dir, Convention fields) {
    ManeuverSequence seq;
    seq.m_total = kilograms(number(j, "M_total_kg"));

    const json& particles = require(j, "particles");
    if (!particles.is_array()) throw ParseError("'particles' must be an array");
    for (std::size_t i = 0; i < particles.size(); ++i) {
        try {
            seq.particles.push_back(particle_from_json(particles[i]));
        } catch (const Error& e) {
            throw ParseError("particles[" + std::to_string(i) + "]: " + e.what());
        }
    }

    const json& maneuvers = require(j, "maneuvers");
    if (!maneuvers.is_array()) throw ParseError("'maneuvers' must be an array");
    for (std::size_t i = 0; i < maneuvers.size(); ++i) {
        const json& m = maneuvers[i];
        try {
            const json& type_field = require(m, "type");
            if (!type_field.is_string()) throw ParseError("field 'type' must be a string");
            const std::string type = type_field.get<std::string>();
            std::string id = m.contains("id") ? m["id"].get<std::string>() : std::to_string(i);
            if (type == "rotation") {
                seq.maneuvers.push_back({id, Rotation{vector3(m, "axis"), number(m, "angle_rad"), optional_index(m)}});
            } else if (type == "aggregation") {
                const json& n = require(m, "N");
                if (!n.is_number_unsigned()) throw ParseError("field 'N' must be a positive integer");
                seq.maneuvers.push_back({id, Aggregation{n.get<std::uint64_t>(), meters(number(m, "a_m")),
                                                         vector3(m, "direction"), optional_index(m).value_or(0)}});
            } else if (type == "field_modulation") {
                const json& path = require(m, "series");
                if (!path.is_string()) throw ParseError("field 'series' must be a CSV path");
                seq.maneuvers.push_back(
                    {id, FieldModulation{read_field_series_csv(base_dir / path.get<std::string>(), fields),
                                         optional_index(m)}});
            } else if (type == "cavity_modulation") {
                seq.maneuvers.push_back({id, CavityModulation{erg_per_cm3(number(m, "dB2_dt")) / seconds(1.0),
                                                              seconds(number(m, "duration_s")), optional_index(m)}});
            } else {
                throw ParseError("unknown maneuver type '" + type + "'");
            }
        } catch (const json::exception& e) {
            throw ParseError("maneuvers[" + std::to_string(i) + "]: " + e.what());
        } catch (const Error& e) {
            throw ParseError("maneuvers[" + std::to_string(i) + "]: " + e.what());
        }
    }
    return seq;
}

void write_ledger_jsonl(const ImpulseLedger& ledger, std::ostream& out) {
    for (const auto& e : ledger.entries()) {
        const json row = {{"maneuver_id", e.maneuver_id},
                          {"type", e.type},
                          {"dp_particles", array3(e.dp_particles)},
                          {"dp_vacuum", array3(e.dp_vacuum)},
                          {"cumulative_v", array3(e.cumulative_v)}};
        out << row.dump() << '\n';
    }
}

std::vector<OracleRow> oracle_study(double chi, const std::vector<double>& sizes_m, const std::vector<int>& n_values,
                                    CutoffConvention cutoff, unsigned threads) {
    std::vector<OracleRow> rows;
    for (const double a : sizes_m) {
        for (const int n : n_values) {
            const Quantity size = meters(a);
            const OracleResult r = mode_sum_oracle(chi, size, ModeGrid::for_size(size, cutoff, n), threads);
            rows.push_back({n, a, chi, r.momentum.value(), r.effective_A.value_or(0.0)});
        }
    }
    return rows;
}

void write_oracle_csv(const std::vector<OracleRow>& rows, std::ostream& out) {
    out << kOracleHeader << '\n';
    for (const auto& r : rows) {
        out << r.n_per_axis << ',' << format_number(r.a_m) << ',' << format_number(r.chi) << ','
            << format_number(r.p_kg_m_s) << ',' << format_number(r.effective_A) << '\n';
    }
}

}  // namespace qwheel
