#pragma once

// Shared helpers for the test binaries: generators and tolerances.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qwheel/dynamics.hpp"
#include "qwheel/ledger.hpp"
#include "qwheel/material.hpp"
#include "qwheel/mission.hpp"

namespace qwheel::test {

inline double rel_err(double got, double want) {
    const double scale = std::max(std::fabs(want), std::fabs(got));
    return scale == 0.0 ? 0.0 : std::fabs(got - want) / scale;
}

/// Uniform random rotation from a normalized Gaussian quaternion, expanded by hand.
inline Mat3 random_rotation(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    double w = g(rng), x = g(rng), y = g(rng), z = g(rng);
    const double n = std::sqrt(w * w + x * x + y * y + z * z);
    w /= n, x /= n, y /= n, z /= n;
    Mat3 r;
    r << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),  //
        2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),   //
        2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
    return r;
}

inline Mat3 random_matrix(std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = u(rng);
    return m;
}

/// chi'_ij = R_ia R_jb chi_ab, written out as index sums.
inline Mat3 conjugate_by_index(const Mat3& chi, const Mat3& r) {
    Mat3 out = Mat3::Zero();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) out(i, j) += r(i, a) * r(j, b) * chi(a, b);
    return out;
}

/// offset + sum of up to five sinusoids.
struct SmoothSignal {
    double offset = 0.0;
    std::vector<double> amp, omega, phase;

    double operator()(double t) const {
        double v = offset;
        for (std::size_t k = 0; k < amp.size(); ++k) v += amp[k] * std::sin(omega[k] * t + phase[k]);
        return v;
    }

    static SmoothSignal random(std::mt19937_64& rng, double offset, double scale) {
        std::uniform_int_distribution<int> count(1, 5);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        SmoothSignal s;
        s.offset = offset;
        const int n = count(rng);
        for (int k = 0; k < n; ++k) {
            s.amp.push_back(scale * (2 * u(rng) - 1));
            s.omega.push_back(1.0 + 9.0 * u(rng));
            s.phase.push_back(2 * std::numbers::pi * u(rng));
        }
        return s;
    }
};

/// Random E_x, B_y and chi0_xy signals on t in [0, 1], Gaussian units.
struct RandomFields {
    SmoothSignal e, b, chi;
    double kappa1 = 0.0;

    static RandomFields draw(std::mt19937_64& rng) {
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        RandomFields f;
        f.e = SmoothSignal::random(rng, u(rng), 1.0);
        f.b = SmoothSignal::random(rng, 2.0 + u(rng), 1.0);
        f.chi = SmoothSignal::random(rng, 1e-3 * u(rng), 1e-3);
        f.kappa1 = 1e-4 * u(rng);
        return f;
    }

    FieldTimeSeries sample(std::size_t n) const {
        std::vector<double> t(n), ex(n), by(n);
        std::vector<ChiParams> chi(n);
        for (std::size_t i = 0; i < n; ++i) {
            t[i] = static_cast<double>(i) / static_cast<double>(n - 1);
            ex[i] = e(t[i]);
            by[i] = b(t[i]);
            chi[i] = ChiParams{this->chi(t[i]), kappa1, 0.0, 0.0};
        }
        return FieldTimeSeries(t, ex, by, chi, Convention::gaussian);
    }
};

/// Largest interior |direct - sum of terms|, relative to the largest |direct|.
inline double decomposition_residual(const Particle& p, const FieldTimeSeries& s) {
    const QuantitySeries direct = force_direct(p, s);
    const ForceDecomposition parts = force_decomposed(p, s);
    double err = 0.0, scale = 0.0;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        const double sum = parts.dielectric.samples.values[i] + parts.classical_me.samples.values[i] +
                           parts.chi_dot.samples.values[i];
        err = std::max(err, std::fabs(direct.values[i] - sum));
        scale = std::max(scale, std::fabs(direct.values[i]));
    }
    return err / scale;
}

struct RandomSequence {
    std::vector<Particle> particles;
    std::vector<Maneuver> maneuvers;
    Quantity m_total = kilograms(1.0);
};

/// 1-4 particles and 0-12 maneuvers of every kind.
inline RandomSequence random_sequence(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> pcount(1, 4), mcount(0, 12), kind(0, 3);
    RandomSequence s;
    const int np = pcount(rng);
    double mass = 0.0;
    for (int i = 0; i < np; ++i) {
        MagnetoElectricTensor t;
        t.chi0 = random_matrix(rng, 1e-3);
        s.particles.emplace_back(meters(std::pow(10.0, -9.0 + 0.5 * u(rng))), kg_per_m3(3000.0 + 2000.0 * u(rng)), t,
                                 random_rotation(rng), 1.0 + std::fabs(u(rng)));
        mass += particle_mass(s.particles.back()).value();
    }
    s.m_total = kilograms(mass * (1.0 + std::fabs(u(rng))));
    std::uniform_int_distribution<std::size_t> pick(0, s.particles.size() - 1);
    const int nm = mcount(rng);
    for (int i = 0; i < nm; ++i) {
        Maneuver m;
        m.id = "m" + std::to_string(i);
        switch (kind(rng)) {
            case 0: {
                Rotation r;
                r.axis = Vec3(u(rng), u(rng), u(rng)).normalized();
                r.angle = std::numbers::pi * 2 * u(rng);
                if (u(rng) > 0) r.particle = pick(rng);
                m.kind = r;
                break;
            }
            case 1: {
                Aggregation g;
                g.n = static_cast<std::uint64_t>(1 + std::floor(1000 * std::fabs(u(rng))));
                g.a = meters(1e-9 * (1.5 + u(rng)));
                g.direction = Vec3(u(rng), u(rng), u(rng)).normalized();
                g.particle = pick(rng);
                m.kind = g;
                break;
            }
            case 2: {
                const auto fields = RandomFields::draw(rng);
                FieldModulation f{fields.sample(33), std::nullopt};
                if (u(rng) > 0) f.particle = pick(rng);
                m.kind = f;
                break;
            }
            default: {
                CavityModulation c;
                c.dB2_dt = erg_per_cm3(1e3 * u(rng)) / seconds(1.0);
                c.duration = seconds(1.0 + std::fabs(u(rng)));
                m.kind = c;
                break;
            }
        }
        s.maneuvers.push_back(std::move(m));
    }
    return s;
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

/// Random valid spec whose target rate is exactly met at the drawn values.
inline MissionSpec random_feasible_spec(std::mt19937_64& rng) {
    MissionSpec s;
    s.chi0 = log_uniform(rng, 1e-6, 1e-1);
    s.particle_size = log_uniform(rng, 3e-10, 1e-8);
    s.particle_density = log_uniform(rng, 500.0, 1e4);
    s.active_mass_fraction = log_uniform(rng, 0.05, 1.0);
    s.prefactor_A = log_uniform(rng, 1e-3, 1e-1);
    s.wheel_radius = log_uniform(rng, 0.5, 3.0);
    s.satellite_mass = log_uniform(rng, 10.0, 1000.0);
    s.target_rate = 1.0;
    const MissionReport r = evaluate_mission(s);
    s.target_rate = tangential_v_to_rate(r.achieved_tangential_v, meters(s.wheel_radius));
    return s;
}

}  // namespace qwheel::test
