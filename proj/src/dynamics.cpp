#include "qwheel/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qwheel {

namespace {

void require_finite(const std::vector<double>& v, const char* name) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) {
            throw DomainError(std::string("field series: ") + name + "[" + std::to_string(i) + "] is not finite");
        }
    }
}

constexpr Dimension kForceSampleDim = dims::energy_density / dims::time;

}  // namespace

FieldTimeSeries::FieldTimeSeries(std::vector<double> t, std::vector<double> e_x, std::vector<double> b_y,
                                 std::optional<std::vector<ChiParams>> chi_params, Convention fields)
    : t_(std::move(t)), e_x_(std::move(e_x)), b_y_(std::move(b_y)), chi_(std::move(chi_params)) {
    if (t_.size() < 3) throw DomainError("field series needs at least 3 samples, got " + std::to_string(t_.size()));
    if (e_x_.size() != t_.size() || b_y_.size() != t_.size() || (chi_ && chi_->size() != t_.size())) {
        throw DomainError("field series columns have different lengths");
    }
    require_finite(t_, "t");
    require_finite(e_x_, "E_x");
    require_finite(b_y_, "B_y");
    if (chi_) {
        for (std::size_t i = 0; i < chi_->size(); ++i) {
            const auto& c = (*chi_)[i];
            if (!std::isfinite(c.chi0_xy) || !std::isfinite(c.kappa1) || !std::isfinite(c.kappa2) ||
                !std::isfinite(c.kappa3)) {
                throw DomainError("field series: chi parameters at sample " + std::to_string(i) + " are not finite");
            }
        }
    }

    dt_ = (t_.back() - t_.front()) / static_cast<double>(t_.size() - 1);
    if (!(dt_ > 0.0)) throw DomainError("field series times must increase");
    for (std::size_t i = 1; i < t_.size(); ++i) {
        const double step = t_[i] - t_[i - 1];
        if (std::fabs(step - dt_) > kSpacingTolerance * dt_) {
            throw DomainError("field series is not uniformly spaced at sample " + std::to_string(i));
        }
    }

    if (fields == Convention::si) {
        for (auto& e : e_x_) e = convert_gaussian_si(volts_per_meter(e), ConversionDirection::si_to_gaussian).value();
        for (auto& b : b_y_) b = convert_gaussian_si(tesla(b), ConversionDirection::si_to_gaussian).value();
    }
}

std::vector<double> time_derivative(std::span<const double> f, double dt) {
    const std::size_t n = f.size();
    if (n < 3) throw DomainError("time derivative needs at least 3 samples");
    std::vector<double> d(n);
    d[0] = (f[1] - f[0]) / dt;
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * dt);
    d[n - 1] = (f[n - 1] - f[n - 2]) / dt;
    return d;
}

double trapezoid(std::span<const double> f, double dt) {
    if (f.size() < 2) return 0.0;
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
    return s * dt;
}

namespace {

// chi_xy(t) from either the per-sample overrides or the particle's lab-frame tensor.
std::vector<double> chi_series(const Particle& p, const FieldTimeSeries& s) {
    std::vector<double> chi(s.size());
    if (s.chi_params()) {
        const auto& params = *s.chi_params();
        for (std::size_t i = 0; i < s.size(); ++i) {
            MagnetoElectricTensor t = MagnetoElectricTensor::xy(params[i].chi0_xy);
            t.kappa1 = params[i].kappa1;
            t.kappa2 = params[i].kappa2;
            t.kappa3 = params[i].kappa3;
            chi[i] = chi_effective_gaussian(t, s.e_x()[i], s.b_y()[i]);
        }
    } else {
        const MagnetoElectricTensor t = p.oriented_tensor();
        for (std::size_t i = 0; i < s.size(); ++i) chi[i] = chi_effective_gaussian(t, s.e_x()[i], s.b_y()[i]);
    }
    return chi;
}

QuantitySeries force_series(std::vector<double> v) { return {kForceSampleDim, Convention::gaussian, std::move(v)}; }

}  // namespace

QuantitySeries force_direct(const Particle& p, const FieldTimeSeries& s) {
    const std::vector<double> chi = chi_series(p, s);
    std::vector<double> pol(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) pol[i] = p.epsilon() * s.e_x()[i] + chi[i] * s.b_y()[i];
    std::vector<double> f = time_derivative(pol, s.dt());
    for (std::size_t i = 0; i < s.size(); ++i) f[i] *= s.b_y()[i];
    return force_series(std::move(f));
}

ForceDecomposition force_decomposed(const Particle& p, const FieldTimeSeries& s) {
    const std::size_t n = s.size();
    const std::vector<double> chi = chi_series(p, s);
    std::vector<double> eps_e(n), b2(n);
    for (std::size_t i = 0; i < n; ++i) {
        eps_e[i] = p.epsilon() * s.e_x()[i];
        b2[i] = s.b_y()[i] * s.b_y()[i];
    }
    std::vector<double> f1 = time_derivative(eps_e, s.dt());
    std::vector<double> f2 = time_derivative(b2, s.dt());
    std::vector<double> f3 = time_derivative(chi, s.dt());
    for (std::size_t i = 0; i < n; ++i) {
        f1[i] *= s.b_y()[i];
        f2[i] *= 0.5 * chi[i];
        f3[i] *= b2[i];
    }
    return {{force_series(std::move(f1)), false}, {force_series(std::move(f2)), true},
            {force_series(std::move(f3)), true}};
}

QuantitySeries ForceDecomposition::vacuum_capable_sum() const {
    QuantitySeries out = classical_me.samples;
    for (std::size_t i = 0; i < out.size(); ++i) out.values[i] += chi_dot.samples.values[i];
    return out;
}

Quantity channel_cavity(double chi_xy, const Quantity& dB2_dt, const Quantity& duration) {
    const double t = duration.value_as(dims::time);
    if (!(t > 0.0)) throw DomainError("cavity modulation duration must be positive, got " + std::to_string(t));
    dB2_dt.value_as(dims::energy_density / dims::time, Convention::gaussian);
    return chi_xy * 0.5 * dB2_dt * duration;
}

Quantity channel_chi_dot(const Quantity& b2_vac, double chi_start, double chi_end) {
    b2_vac.value_as(dims::energy_density, Convention::gaussian);
    return b2_vac * (chi_end - chi_start);
}

Quantity calibrated_momentum(const Quantity& channel, const Quantity& a, const VacuumModel& model) {
    model.validate();
    const Quantity b2 = vacuum_b_squared(a, model);
    return model.prefactor_A * constants::hbar / a * (channel / b2);
}

Quantity delta_v_rotation(const Particle& p, const VacuumModel& model) {
    model.validate();
    const double chi = p.oriented_chi0_xy();
    const Quantity& a = p.size();
    const Quantity& rho = p.density();

    const Quantity by_density = model.prefactor_A * constants::hbar * (2.0 * chi) / (rho * pow(a, 4));
    const Quantity by_mass = model.prefactor_A * constants::hbar * (2.0 * chi) / (particle_mass(p) * a);
    const double scale = std::fabs(by_density.value());
    if (std::fabs(by_density.value() - by_mass.value()) > 1e-12 * scale) {
        throw std::logic_error("delta_v_rotation: rho a^4 and m a forms disagree");
    }
    return by_density;
}

Quantity delta_v_aggregation(const Quantity& a, const Quantity& rho, double chi, std::uint64_t n,
                             const VacuumModel& model) {
    model.validate();
    if (n < 1) throw DomainError("aggregation needs N >= 1");
    const double size = a.value_as(dims::length, Convention::si);
    const double density = rho.value_as(dims::mass_density, Convention::si);
    if (!(size > 0.0)) throw DomainError("particle size must be positive");
    if (!(density > 0.0)) throw DomainError("particle density must be positive");
    // 1/a^4 - 1/L^4 with L = N^(1/3) a, written so that N = 1 is exactly zero.
    const double shrink = 1.0 - std::pow(static_cast<double>(n), -4.0 / 3.0);
    return model.prefactor_A * (constants::hbar / rho) * chi * shrink / pow(a, 4);
}

Quantity payload_delta_v(const Quantity& dv, const Quantity& m_active, const Quantity& m_total) {
    dv.value_as(dims::velocity);
    const double m = m_active.value_as(dims::mass, Convention::si);
    const double total = m_total.value_as(dims::mass, Convention::si);
    if (!(m > 0.0)) throw DomainError("active mass must be positive");
    if (m > total) {
        throw DomainError("active mass " + std::to_string(m) + " kg exceeds total mass " + std::to_string(total) +
                          " kg");
    }
    return dv * (m_active / m_total);
}

}  // namespace qwheel
