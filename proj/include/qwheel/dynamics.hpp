#pragma once

// Force on a polarized particle in crossed E_x, B_y fields, its three-term
// decomposition, the momentum-extraction channels, and per-maneuver
// velocity gains.
//
// All proportionalities are taken with unit constant; the empirical
// magnitude lives in VacuumModel::prefactor_A.  Force samples are Gaussian
// B dP/dt (erg cm^-3 s^-1): a force density up to that absorbed constant.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qwheel/material.hpp"
#include "qwheel/quantities.hpp"
#include "qwheel/vacuum.hpp"

namespace qwheel {

/// Per-sample override of the particle's (chi0_xy, kappa1, kappa2, kappa3).
struct ChiParams {
    double chi0_xy = 0.0;
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    double kappa3 = 0.0;
};

/// Uniformly sampled E_x(t), B_y(t), stored in Gaussian units.
class FieldTimeSeries {
public:
    /// `fields` says how e_x / b_y are given (V/m and T, or statV/cm and G).
    FieldTimeSeries(std::vector<double> t, std::vector<double> e_x, std::vector<double> b_y,
                    std::optional<std::vector<ChiParams>> chi_params = std::nullopt,
                    Convention fields = Convention::gaussian);

    std::size_t size() const { return t_.size(); }
    double dt() const { return dt_; }
    const std::vector<double>& t() const { return t_; }
    const std::vector<double>& e_x() const { return e_x_; }
    const std::vector<double>& b_y() const { return b_y_; }
    const std::optional<std::vector<ChiParams>>& chi_params() const { return chi_; }

    /// Uniform spacing is accepted up to this relative deviation.
    static constexpr double kSpacingTolerance = 1e-9;

private:
    std::vector<double> t_, e_x_, b_y_;
    std::optional<std::vector<ChiParams>> chi_;
    double dt_ = 0.0;
};

/// Samples of one dimensioned signal.
struct QuantitySeries {
    Dimension dimension;
    Convention convention = Convention::gaussian;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    Quantity operator[](std::size_t i) const { return {values[i], dimension, convention}; }
};

/// d/dt: central second order inside, one-sided first order at both ends.
std::vector<double> time_derivative(std::span<const double> f, double dt);

/// Trapezoidal integral of uniformly spaced samples.
double trapezoid(std::span<const double> f, double dt);

/// F = B_y dP_x/dt with P_x = eps E_x + chi_xy B_y.
QuantitySeries force_direct(const Particle& p, const FieldTimeSeries& s);

struct ForceTerm {
    QuantitySeries samples;
    /// False for the linear-dielectric term, which has no zero-point part.
    bool vacuum_capable = false;
};

struct ForceDecomposition {
    ForceTerm dielectric;     ///< B_y d(eps E_x)/dt
    ForceTerm classical_me;   ///< chi_xy (1/2) d(B_y^2)/dt
    ForceTerm chi_dot;        ///< B_y^2 d(chi_xy)/dt

    /// classical_me + chi_dot, sample by sample.
    QuantitySeries vacuum_capable_sum() const;
};

ForceDecomposition force_decomposed(const Particle& p, const FieldTimeSeries& s);

/// chi_xy (1/2) d<B^2>/dt integrated over `duration` at constant rate.
/// dB2_dt is Gaussian G^2/s; the result is G^2 (same units as <B^2>).
Quantity channel_cavity(double chi_xy, const Quantity& dB2_dt, const Quantity& duration);

/// <B^2_vac> (chi_end - chi_start).  Path-independent in chi.
Quantity channel_chi_dot(const Quantity& b2_vac, double chi_start, double chi_end);

/// Momentum carried by a channel integral for a particle of size a:
/// A hbar / a * channel / <B^2_vac>(a).  For the chi-dot channel this is
/// exactly the change of A hbar chi / a.
Quantity calibrated_momentum(const Quantity& channel, const Quantity& a, const VacuumModel& model);

/// Velocity gain of one particle flipped by pi: A hbar 2 chi0_xy / (rho a^4),
/// using the particle's lab-frame chi0_xy.
Quantity delta_v_rotation(const Particle& p, const VacuumModel& model);

/// Velocity gain when N particles of size a merge into one of size
/// L = N^(1/3) a: A (hbar / rho) chi (1/a^4 - 1/L^4).
Quantity delta_v_aggregation(const Quantity& a, const Quantity& rho, double chi, std::uint64_t n,
                             const VacuumModel& model);

/// dv m_active / M_total; requires 0 < m_active <= M_total.
Quantity payload_delta_v(const Quantity& dv, const Quantity& m_active, const Quantity& m_total);

}  // namespace qwheel
