#pragma once

// Zero-point field model: size cutoff, <B^2_vac>, the closed-form vacuum
// momentum A hbar chi / a, and a discretized mode-summation oracle used to
// check its scaling laws independently.

#include <cstdint>
#include <optional>

#include "qwheel/material.hpp"
#include "qwheel/quantities.hpp"

namespace qwheel {

/// How a particle size a maps to the highest contributing wavenumber.
enum class CutoffConvention : std::uint8_t {
    wavelength_equals_size,  ///< lambda_min = a with lambda = 2 pi / k: k_cut = 2 pi / a
    half_wavelength,         ///< lambda_min / 2 = a: k_cut = pi / a
    reduced_wavelength,      ///< lambda_min = a with lambda = c / omega = 1 / k: k_cut = 1 / a
};

const char* to_string(CutoffConvention c);
/// Accepts "wavelength", "half-wavelength", "reduced-wavelength".
CutoffConvention parse_cutoff(const std::string& name);

/// Lab axis along which vacuum momentum of a chi_xy component is reported.
inline const Vec3 kMomentumAxis = Vec3::UnitZ();

struct VacuumModel {
    double prefactor_A = 1e-2;
    CutoffConvention cutoff = CutoffConvention::wavelength_equals_size;

    /// Throws unless prefactor_A > 0 and finite.
    void validate() const;
    /// Cutoff wavenumber for particle size a.
    Quantity k_cut(const Quantity& a) const;
};

/// <B^2_vac> = hbar omega_cut^4 / (2 pi c^3), Gaussian (G^2 = erg/cm^3).
///
/// This is 4 pi times the zero-point energy density integrated up to the
/// cutoff, with <E^2> = <B^2>.
Quantity vacuum_b_squared(const Quantity& a, const VacuumModel& model);

/// p_vac = A hbar chi_xy / a, signed component along kMomentumAxis.
Quantity vacuum_momentum_closed_form(double chi_xy, const Quantity& a, const VacuumModel& model);

/// Cubic k-space lattice with cell-centred points (i + 1/2) dk, i in [-n, n),
/// restricted to the ball |k| <= k_cut.  `reflected` mirrors the grid along
/// the distinguished axis.
struct ModeGrid {
    int n_per_axis = 64;
    Quantity k_cut = per_meter(1.0);
    bool reflected = false;

    static ModeGrid for_size(const Quantity& a, CutoffConvention cutoff, int n_per_axis);

    Quantity spacing() const { return k_cut / static_cast<double>(n_per_axis); }
    void validate() const;
};

struct OracleResult {
    Quantity momentum;  ///< signed component along kMomentumAxis, kg m/s
    std::optional<double> effective_A;  ///< |p| a / (hbar |chi|); empty when chi == 0
    std::uint64_t modes = 0;  ///< lattice points inside the ball
};

/// Sums, over every lattice mode inside the ball and both polarizations, the
/// chi-weighted asymmetry of the half-quantum momentum hbar|k|/2 projected on
/// the distinguished axis, with mode density a^3 dk^3 / (2 pi)^3.
///
/// This is a weight model chosen for its scaling (linear in chi, 1/a at a
/// size-tied cutoff); it does not derive the value of A.  Partial sums are
/// exact integers, so the result is independent of `threads`.
OracleResult mode_sum_oracle(double chi_xy, const Quantity& a, const ModeGrid& grid, unsigned threads = 0);

}  // namespace qwheel
