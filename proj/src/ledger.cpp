#include "qwheel/ledger.hpp"

#include <cmath>
#include <string>

namespace qwheel {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_index(const std::optional<std::size_t>& i, std::size_t count) {
    if (i && *i >= count) {
        throw DomainError("particle index " + std::to_string(*i) + " out of range (" + std::to_string(count) +
                          " particles)");
    }
}

void check_unit(const Vec3& v, const char* what) {
    if (!v.allFinite() || std::fabs(v.norm() - 1.0) > 1e-12) {
        throw DomainError(std::string(what) + " must be a unit vector (|v| = " + std::to_string(v.norm()) + ")");
    }
}

template <class F>
void for_targets(std::vector<Particle>& particles, const std::optional<std::size_t>& target, F&& f) {
    if (target) {
        f(particles[*target]);
    } else {
        for (auto& p : particles) f(p);
    }
}

}  // namespace

const char* type_name(const ManeuverKind& kind) {
    return std::visit(overloaded{[](const Rotation&) { return "rotation"; },
                                 [](const Aggregation&) { return "aggregation"; },
                                 [](const FieldModulation&) { return "field_modulation"; },
                                 [](const CavityModulation&) { return "cavity_modulation"; }},
                      kind);
}

void validate(const Maneuver& m, std::size_t particle_count) {
    std::visit(overloaded{
                   [&](const Rotation& r) {
                       check_unit(r.axis, "rotation axis");
                       if (!std::isfinite(r.angle)) throw DomainError("rotation angle is not finite");
                       check_index(r.particle, particle_count);
                   },
                   [&](const Aggregation& g) {
                       if (g.n < 1) throw DomainError("aggregation needs N >= 1");
                       check_unit(g.direction, "aggregation direction");
                       check_index(g.particle, particle_count);
                       if (!(g.a.value_as(dims::length, Convention::si) > 0.0)) {
                           throw DomainError("aggregation size must be positive");
                       }
                   },
                   [&](const FieldModulation& f) { check_index(f.particle, particle_count); },
                   [&](const CavityModulation& c) {
                       if (!(c.duration.value_as(dims::time) > 0.0)) {
                           throw DomainError("cavity modulation duration must be positive");
                       }
                       c.dB2_dt.value_as(dims::energy_density / dims::time, Convention::gaussian);
                       check_index(c.particle, particle_count);
                   },
               },
               m.kind);
    if (particle_count == 0) throw DomainError("maneuver sequence has no particles");
}

ImpulseLedger::ImpulseLedger(Quantity m_total) : m_total_(m_total) {
    if (!(m_total_.value_as(dims::mass, Convention::si) > 0.0)) throw DomainError("total mass must be positive");
}

void ImpulseLedger::book(std::string maneuver_id, std::string type, const Vec3& dp_particles) {
    dp_sum_ += dp_particles;
    LedgerEntry e;
    e.maneuver_id = std::move(maneuver_id);
    e.type = std::move(type);
    e.dp_particles = dp_particles;
    e.dp_vacuum = -dp_particles;
    e.cumulative_v = dp_sum_ / m_total_.value();
    entries_.push_back(std::move(e));
}

double ImpulseLedger::max_conservation_residual() const {
    double worst = 0.0;
    for (const auto& e : entries_) {
        const double scale = e.dp_particles.norm();
        if (scale == 0.0) {
            worst = std::max(worst, e.dp_vacuum.norm() == 0.0 ? 0.0 : 1.0);
            continue;
        }
        worst = std::max(worst, (e.dp_particles + e.dp_vacuum).norm() / scale);
    }
    return worst;
}

ManeuverError::ManeuverError(std::size_t index, const std::string& what, ImpulseLedger partial)
    : Error("maneuver " + std::to_string(index) + ": " + what), index_(index), partial_(std::move(partial)) {}

namespace {

// Vacuum momentum change booked by one maneuver, kg m/s.
Vec3 vacuum_change(std::vector<Particle>& particles, const ManeuverKind& kind, const VacuumModel& model) {
    return std::visit(
        overloaded{
            [&](const Rotation& r) {
                const Mat3 rot = rotation_about(r.axis, r.angle);
                double dp = 0.0;
                for_targets(particles, r.particle, [&](Particle& p) {
                    const double before = p.oriented_chi0_xy();
                    p.rotate(rot);
                    const double after = p.oriented_chi0_xy();
                    const Quantity channel = channel_chi_dot(vacuum_b_squared(p.size(), model), before, after);
                    dp += calibrated_momentum(channel, p.size(), model).value_as(dims::momentum);
                });
                return Vec3(dp * kMomentumAxis);
            },
            [&](const Aggregation& g) {
                const Particle& p = particles[g.particle];
                const double chi = p.oriented_chi0_xy();
                const Quantity dv = delta_v_aggregation(g.a, p.density(), chi, g.n, model);
                const Quantity moved_mass = static_cast<double>(g.n) * p.density() * pow(g.a, 3);
                return Vec3(-(moved_mass * dv).value_as(dims::momentum) * g.direction);
            },
            [&](const FieldModulation& f) {
                double dp = 0.0;
                for_targets(particles, f.particle, [&](Particle& p) {
                    const QuantitySeries q = force_decomposed(p, f.series).vacuum_capable_sum();
                    const Quantity channel = erg_per_cm3(trapezoid(q.values, f.series.dt()));
                    dp += calibrated_momentum(channel, p.size(), model).value_as(dims::momentum);
                });
                return Vec3(dp * kMomentumAxis);
            },
            [&](const CavityModulation& c) {
                double dp = 0.0;
                for_targets(particles, c.particle, [&](Particle& p) {
                    const Quantity channel = channel_cavity(p.oriented_chi0_xy(), c.dB2_dt, c.duration);
                    dp += calibrated_momentum(channel, p.size(), model).value_as(dims::momentum);
                });
                return Vec3(dp * kMomentumAxis);
            },
        },
        kind);
}

}  // namespace

ImpulseLedger run_maneuver_sequence(std::vector<Particle>& particles, const std::vector<Maneuver>& maneuvers,
                                    const Quantity& m_total, const VacuumModel& model) {
    model.validate();
    ImpulseLedger ledger(m_total);
    for (std::size_t i = 0; i < maneuvers.size(); ++i) {
        const Maneuver& m = maneuvers[i];
        try {
            validate(m, particles.size());
            const Vec3 dp_vacuum = vacuum_change(particles, m.kind, model);
            ledger.book(m.id.empty() ? std::to_string(i) : m.id, type_name(m.kind), -dp_vacuum);
        } catch (const Error& e) {
            throw ManeuverError(i, e.what(), ledger);
        }
    }
    return ledger;
}

}  // namespace qwheel
