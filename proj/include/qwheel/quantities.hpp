#pragma once

// Unit-carrying scalars.
//
// A Quantity is a double tagged with a dimension vector over the base
// dimensions (length, mass, time, current) and a unit convention.  Exponents
// are stored in half-units so Gaussian field strengths, whose dimension is
// M^(1/2) L^(-1/2) T^(-1), are representable.
//
// Mechanical quantities are SI (m, kg, s).  Electromagnetic fields enter the
// physics in the Gaussian convention (statV/cm, G), where E and B share a
// dimension and B^2 is an energy density.  Quantities whose length, mass and
// current exponents are all zero (pure numbers, times, rates) are the same
// in both conventions and combine freely with either.

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "qwheel/error.hpp"

namespace qwheel {

enum class BaseDim : std::uint8_t { length = 0, mass = 1, time = 2, current = 3 };

class Dimension {
public:
    constexpr Dimension() = default;
    constexpr Dimension(int length, int mass, int time, int current)
        : twice_{2 * length, 2 * mass, 2 * time, 2 * current} {}

    /// Build from exponents given in half-units: halves(-1, 1, -2, 0) is L^-1/2 M^1/2 T^-1.
    static constexpr Dimension halves(int length, int mass, int time, int current) {
        Dimension d;
        d.twice_ = {length, mass, time, current};
        return d;
    }

    constexpr double exponent(BaseDim b) const { return 0.5 * twice_[static_cast<int>(b)]; }
    constexpr int twice_exponent(BaseDim b) const { return twice_[static_cast<int>(b)]; }

    constexpr bool dimensionless() const {
        return twice_[0] == 0 && twice_[1] == 0 && twice_[2] == 0 && twice_[3] == 0;
    }

    /// True when the numeric value does not depend on the unit convention.
    constexpr bool convention_neutral() const {
        return twice_[0] == 0 && twice_[1] == 0 && twice_[3] == 0;
    }

    constexpr Dimension operator*(const Dimension& o) const {
        Dimension d;
        for (int i = 0; i < 4; ++i) d.twice_[i] = twice_[i] + o.twice_[i];
        return d;
    }
    constexpr Dimension operator/(const Dimension& o) const {
        Dimension d;
        for (int i = 0; i < 4; ++i) d.twice_[i] = twice_[i] - o.twice_[i];
        return d;
    }
    constexpr Dimension pow(int n) const {
        Dimension d;
        for (int i = 0; i < 4; ++i) d.twice_[i] = twice_[i] * n;
        return d;
    }

    /// Halves every exponent; throws if a result would need quarter-units.
    Dimension sqrt() const;

    constexpr bool operator==(const Dimension&) const = default;

    /// "(1,0,-1,0)"-style rendering, half exponents as "0.5".
    std::string to_string() const;

private:
    std::array<int, 4> twice_{0, 0, 0, 0};
};

namespace dims {
inline constexpr Dimension none{0, 0, 0, 0};
inline constexpr Dimension length{1, 0, 0, 0};
inline constexpr Dimension mass{0, 1, 0, 0};
inline constexpr Dimension time{0, 0, 1, 0};
inline constexpr Dimension current{0, 0, 0, 1};
inline constexpr Dimension area{2, 0, 0, 0};
inline constexpr Dimension volume{3, 0, 0, 0};
inline constexpr Dimension rate{0, 0, -1, 0};
inline constexpr Dimension velocity{1, 0, -1, 0};
inline constexpr Dimension momentum{1, 1, -1, 0};
inline constexpr Dimension force{1, 1, -2, 0};
inline constexpr Dimension energy{2, 1, -2, 0};
inline constexpr Dimension action{2, 1, -1, 0};
inline constexpr Dimension mass_density{-3, 1, 0, 0};
inline constexpr Dimension wavenumber{-1, 0, 0, 0};
inline constexpr Dimension energy_density{-1, 1, -2, 0};
/// SI electric field, V/m = kg m s^-3 A^-1.
inline constexpr Dimension e_field_si{1, 1, -3, -1};
/// SI magnetic flux density, T = kg s^-2 A^-1.
inline constexpr Dimension b_field_si{0, 1, -2, -1};
/// Gaussian E or B: sqrt(energy density).
inline constexpr Dimension field_gaussian = Dimension::halves(-1, 1, -2, 0);
}  // namespace dims

enum class Convention : std::uint8_t { si, gaussian };

const char* to_string(Convention c);

class Quantity {
public:
    constexpr Quantity() = default;
    constexpr Quantity(double value, Dimension dim, Convention conv = Convention::si)
        : value_(value), dim_(dim), conv_(conv) {}

    constexpr double value() const { return value_; }
    constexpr const Dimension& dimension() const { return dim_; }
    constexpr Convention convention() const { return conv_; }

    /// Numeric value after checking the dimension; the usual way to leave the unit system.
    double value_as(const Dimension& expected) const;
    /// As value_as, and also checks the convention unless the dimension is convention-neutral.
    double value_as(const Dimension& expected, Convention conv) const;

    Quantity operator-() const { return {-value_, dim_, conv_}; }
    Quantity& operator+=(const Quantity& o);
    Quantity& operator-=(const Quantity& o);

    friend Quantity operator+(Quantity a, const Quantity& b) { return a += b; }
    friend Quantity operator-(Quantity a, const Quantity& b) { return a -= b; }
    friend Quantity operator*(const Quantity& a, const Quantity& b);
    friend Quantity operator/(const Quantity& a, const Quantity& b);
    friend Quantity operator*(double s, const Quantity& q) { return {s * q.value_, q.dim_, q.conv_}; }
    friend Quantity operator*(const Quantity& q, double s) { return {q.value_ * s, q.dim_, q.conv_}; }
    friend Quantity operator/(const Quantity& q, double s) { return {q.value_ / s, q.dim_, q.conv_}; }
    friend Quantity operator/(double s, const Quantity& q);

    /// Same dimension and convention required; otherwise throws.
    friend bool operator<(const Quantity& a, const Quantity& b);
    friend bool operator==(const Quantity& a, const Quantity& b);

private:
    double value_ = 0.0;
    Dimension dim_{};
    Convention conv_ = Convention::si;
};

Quantity pow(const Quantity& q, int n);
Quantity sqrt(const Quantity& q);
Quantity abs(const Quantity& q);

/// Returns the composed dimension vector of an expression.
inline Dimension dimension_check(const Quantity& expr) { return expr.dimension(); }

// SI constructors.
inline Quantity dimensionless(double v) { return {v, dims::none}; }
inline Quantity meters(double v) { return {v, dims::length}; }
inline Quantity nanometers(double v) { return {v * 1e-9, dims::length}; }
inline Quantity kilograms(double v) { return {v, dims::mass}; }
inline Quantity seconds(double v) { return {v, dims::time}; }
inline Quantity meters_per_second(double v) { return {v, dims::velocity}; }
inline Quantity kg_per_m3(double v) { return {v, dims::mass_density}; }
inline Quantity kg_m_per_s(double v) { return {v, dims::momentum}; }
inline Quantity per_meter(double v) { return {v, dims::wavenumber}; }
inline Quantity joules_per_m3(double v) { return {v, dims::energy_density}; }
inline Quantity volts_per_meter(double v) { return {v, dims::e_field_si}; }
inline Quantity tesla(double v) { return {v, dims::b_field_si}; }

// Gaussian constructors.
inline Quantity gauss(double v) { return {v, dims::field_gaussian, Convention::gaussian}; }
inline Quantity statvolts_per_cm(double v) { return {v, dims::field_gaussian, Convention::gaussian}; }
/// erg/cm^3, which is also G^2.
inline Quantity erg_per_cm3(double v) { return {v, dims::energy_density, Convention::gaussian}; }

namespace constants {
/// Reduced Planck constant, J s (CODATA, exact by SI definition of h).
inline constexpr double hbar_si = 1.054571817e-34;
/// Speed of light in vacuum, m/s (exact).
inline constexpr double c_si = 2.99792458e8;

inline const Quantity hbar{hbar_si, dims::action};
inline const Quantity c{c_si, dims::velocity};
}  // namespace constants

enum class ConversionDirection : std::uint8_t { si_to_gaussian, gaussian_to_si };

/// Disambiguates Gaussian E and B, which share a dimension.
enum class FieldKind : std::uint8_t { electric, magnetic };

/// Rescales an E-field, B-field or energy density between SI and Gaussian.
///
/// SI->Gaussian is unambiguous.  Gaussian->SI of a field needs `kind`, since
/// statV/cm and G have the same dimension; energy densities need no hint.
/// Anything else throws DimensionError naming the offending dimension vector.
Quantity convert_gaussian_si(const Quantity& q, ConversionDirection direction,
                             std::optional<FieldKind> kind = std::nullopt);

/// Accepts an E or B field in either convention and returns it in Gaussian units.
Quantity to_gaussian_field(const Quantity& field, FieldKind kind);

}  // namespace qwheel
