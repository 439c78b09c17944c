#include "qwheel/vacuum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

namespace qwheel {

const char* to_string(CutoffConvention c) {
    switch (c) {
        case CutoffConvention::wavelength_equals_size: return "wavelength";
        case CutoffConvention::half_wavelength: return "half-wavelength";
        case CutoffConvention::reduced_wavelength: return "reduced-wavelength";
    }
    return "?";
}

CutoffConvention parse_cutoff(const std::string& name) {
    if (name == "wavelength") return CutoffConvention::wavelength_equals_size;
    if (name == "half-wavelength") return CutoffConvention::half_wavelength;
    if (name == "reduced-wavelength") return CutoffConvention::reduced_wavelength;
    throw DomainError("unknown cutoff convention '" + name +
                      "' (expected wavelength, half-wavelength or reduced-wavelength)");
}

void VacuumModel::validate() const {
    if (!(prefactor_A > 0.0) || !std::isfinite(prefactor_A)) {
        throw DomainError("prefactor A must be positive, got " + std::to_string(prefactor_A));
    }
}

namespace {

double checked_size(const Quantity& a) {
    const double v = a.value_as(dims::length, Convention::si);
    if (!(v > 0.0)) throw DomainError("particle size must be positive, got " + std::to_string(v));
    return v;
}

double cutoff_factor(CutoffConvention c) {
    switch (c) {
        case CutoffConvention::wavelength_equals_size: return 2.0 * std::numbers::pi;
        case CutoffConvention::half_wavelength: return std::numbers::pi;
        case CutoffConvention::reduced_wavelength: return 1.0;
    }
    return 0.0;
}

}  // namespace

Quantity VacuumModel::k_cut(const Quantity& a) const {
    checked_size(a);
    return cutoff_factor(cutoff) / a;
}

Quantity vacuum_b_squared(const Quantity& a, const VacuumModel& model) {
    const Quantity omega = constants::c * model.k_cut(a);
    const Quantity si = constants::hbar * pow(omega, 4) / (2.0 * std::numbers::pi * pow(constants::c, 3));
    return convert_gaussian_si(si, ConversionDirection::si_to_gaussian);
}

Quantity vacuum_momentum_closed_form(double chi_xy, const Quantity& a, const VacuumModel& model) {
    model.validate();
    checked_size(a);
    return model.prefactor_A * chi_xy * constants::hbar / a;
}

ModeGrid ModeGrid::for_size(const Quantity& a, CutoffConvention cutoff, int n_per_axis) {
    VacuumModel m;
    m.cutoff = cutoff;
    return ModeGrid{n_per_axis, m.k_cut(a), false};
}

void ModeGrid::validate() const {
    if (n_per_axis < 8) {
        throw DomainError("mode grid needs n_per_axis >= 8, got " + std::to_string(n_per_axis));
    }
    const double k = k_cut.value_as(dims::wavenumber, Convention::si);
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("mode grid cutoff must be positive");
}

namespace {

struct SliceSum {
    std::uint64_t twice_abs_kz = 0;  // sum of |2 m_z| over points in the slice, m = index + 1/2
    std::uint64_t points = 0;
};

// Lattice coordinates are m = i + 1/2; work with odd integers u = 2m to stay exact.
SliceSum sum_slice(int ix, int n, bool reflected) {
    SliceSum s;
    const long long r2 = 4LL * n * n;
    const long long ux = 2LL * ix + 1;
    for (int iy = -n; iy < n; ++iy) {
        const long long uy = 2LL * iy + 1;
        const long long rem = r2 - ux * ux - uy * uy;
        if (rem < 1) continue;
        for (int iz = -n; iz < n; ++iz) {
            long long uz = 2LL * iz + 1;
            if (reflected) uz = -uz;
            if (uz * uz > rem) continue;
            s.twice_abs_kz += static_cast<std::uint64_t>(uz < 0 ? -uz : uz);
            ++s.points;
        }
    }
    return s;
}

}  // namespace

OracleResult mode_sum_oracle(double chi_xy, const Quantity& a, const ModeGrid& grid, unsigned threads) {
    grid.validate();
    const double size = checked_size(a);
    const int n = grid.n_per_axis;

    const int slices = 2 * n;
    std::vector<SliceSum> partial(static_cast<std::size_t>(slices));
    unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(slices));
    if (workers <= 1) {
        for (int s = 0; s < slices; ++s) partial[static_cast<std::size_t>(s)] = sum_slice(s - n, n, grid.reflected);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (int s = static_cast<int>(w); s < slices; s += static_cast<int>(workers)) {
                    partial[static_cast<std::size_t>(s)] = sum_slice(s - n, n, grid.reflected);
                }
            });
        }
    }

    std::uint64_t twice_abs = 0;
    std::uint64_t points = 0;
    for (const auto& p : partial) {
        twice_abs += p.twice_abs_kz;
        points += p.points;
    }

    // sum |k_z| dk^3 = (twice_abs / 2) dk^4
    const double dk = grid.spacing().value();
    const double abs_kz_volume = 0.5 * static_cast<double>(twice_abs) * std::pow(dk, 4);
    const double mode_density = std::pow(size, 3) / std::pow(2.0 * std::numbers::pi, 3);
    // two polarizations x hbar|k|/2 x |k_hat . n| = hbar |k_z|
    const double axis_sign = grid.reflected ? -1.0 : 1.0;
    const double p = axis_sign * chi_xy * constants::hbar_si * abs_kz_volume * mode_density;

    OracleResult out;
    out.momentum = kg_m_per_s(p);
    out.modes = points;
    if (chi_xy != 0.0) out.effective_A = std::fabs(p) * size / (constants::hbar_si * std::fabs(chi_xy));
    return out;
}

}  // namespace qwheel
