#pragma once

// Maneuver sequences over an array of particles, booked into an impulse
// ledger that enforces momentum conservation entry by entry.
//
// Sign convention: every channel is booked as a change of the vacuum
// momentum stored in the particles, p = A hbar chi / a along kMomentumAxis
// (scaled by B^2 / <B^2_vac> for field-driven channels).  The particles take
// the opposite momentum.  A pi-rotation of chi0_xy > 0 therefore moves the
// payload along +kMomentumAxis at delta_v_rotation.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qwheel/dynamics.hpp"
#include "qwheel/material.hpp"
#include "qwheel/vacuum.hpp"

namespace qwheel {

/// Rotation of one particle, or of all of them when `particle` is empty.
struct Rotation {
    Vec3 axis = Vec3::UnitX();
    double angle = 0.0;  ///< rad
    std::optional<std::size_t> particle;
};

/// N particles of size a, with the density and lab-frame chi0_xy of
/// `particle`, merge into one body of size N^(1/3) a.
struct Aggregation {
    std::uint64_t n = 1;
    Quantity a = meters(1e-9);
    Vec3 direction = Vec3::UnitZ();
    std::size_t particle = 0;
};

struct FieldModulation {
    FieldTimeSeries series;
    std::optional<std::size_t> particle;
};

struct CavityModulation {
    Quantity dB2_dt = erg_per_cm3(0.0) / seconds(1.0);  ///< Gaussian G^2/s
    Quantity duration = seconds(1.0);
    std::optional<std::size_t> particle;
};

using ManeuverKind = std::variant<Rotation, Aggregation, FieldModulation, CavityModulation>;

struct Maneuver {
    std::string id;
    ManeuverKind kind;
};

const char* type_name(const ManeuverKind& kind);

/// Rejects malformed maneuvers: axis not unit to 1e-12, N < 1, duration <= 0,
/// particle index out of range.
void validate(const Maneuver& m, std::size_t particle_count);

struct LedgerEntry {
    std::string maneuver_id;
    std::string type;
    Vec3 dp_particles = Vec3::Zero();  ///< kg m/s
    Vec3 dp_vacuum = Vec3::Zero();     ///< kg m/s
    Vec3 cumulative_v = Vec3::Zero();  ///< m/s, payload velocity after this entry
};

class ImpulseLedger {
public:
    explicit ImpulseLedger(Quantity m_total);

    /// Appends an entry with dp_vacuum = -dp_particles and updates cumulative_v.
    void book(std::string maneuver_id, std::string type, const Vec3& dp_particles);

    const std::vector<LedgerEntry>& entries() const { return entries_; }
    const Quantity& total_mass() const { return m_total_; }
    /// Payload velocity, m/s.
    Vec3 cumulative_v() const { return entries_.empty() ? Vec3::Zero() : entries_.back().cumulative_v; }
    Vec3 cumulative_dp() const { return dp_sum_; }

    /// Largest |dp_particles + dp_vacuum| / |dp_particles| over all entries.
    double max_conservation_residual() const;

private:
    Quantity m_total_;
    Vec3 dp_sum_ = Vec3::Zero();
    std::vector<LedgerEntry> entries_;
};

/// A maneuver failed; carries its index and the ledger up to that point.
class ManeuverError : public Error {
public:
    ManeuverError(std::size_t index, const std::string& what, ImpulseLedger partial);

    std::size_t index() const { return index_; }
    const ImpulseLedger& partial_ledger() const { return partial_; }

private:
    std::size_t index_;
    ImpulseLedger partial_;
};

/// Applies `maneuvers` in order.  `particles` is updated in place (rotations
/// change orientations).  Throws ManeuverError on the first failure.
ImpulseLedger run_maneuver_sequence(std::vector<Particle>& particles, const std::vector<Maneuver>& maneuvers,
                                    const Quantity& m_total, const VacuumModel& model);

}  // namespace qwheel
