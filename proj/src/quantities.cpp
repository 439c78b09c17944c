#include "qwheel/quantities.hpp"

#include <cmath>
#include <sstream>

namespace qwheel {

namespace {

// 1 statV/cm = 29979.2458 V/m, exact given the defined value of c.
constexpr double kVoltsPerMeterPerStatvoltPerCm = 2.99792458e4;
constexpr double kGaussPerTesla = 1e4;
constexpr double kErgPerCm3PerJoulePerM3 = 10.0;

Convention combined_convention(const Quantity& a, const Quantity& b, const char* op) {
    const bool na = a.dimension().convention_neutral();
    const bool nb = b.dimension().convention_neutral();
    if (na && nb) return a.convention() == b.convention() ? a.convention() : Convention::si;
    if (na) return b.convention();
    if (nb) return a.convention();
    if (a.convention() != b.convention()) {
        throw ConventionError(std::string("cannot ") + op + " " + to_string(a.convention()) + " quantity " +
                              a.dimension().to_string() + " with " + to_string(b.convention()) + " quantity " +
                              b.dimension().to_string());
    }
    return a.convention();
}

void require_same(const Quantity& a, const Quantity& b, const char* op) {
    if (!(a.dimension() == b.dimension())) {
        throw DimensionError(std::string("cannot ") + op + " quantities of dimension " + a.dimension().to_string() +
                             " and " + b.dimension().to_string());
    }
    combined_convention(a, b, op);
}

}  // namespace

Dimension Dimension::sqrt() const {
    for (int t : twice_) {
        if (t % 2 != 0) throw DimensionError("square root of " + to_string() + " needs quarter exponents");
    }
    return halves(twice_[0] / 2, twice_[1] / 2, twice_[2] / 2, twice_[3] / 2);
}

std::string Dimension::to_string() const {
    std::ostringstream os;
    os << '(';
    for (int i = 0; i < 4; ++i) {
        if (i) os << ',';
        if (twice_[i] % 2 == 0) {
            os << twice_[i] / 2;
        } else {
            os << 0.5 * twice_[i];
        }
    }
    os << ')';
    return os.str();
}

const char* to_string(Convention c) { return c == Convention::si ? "SI" : "Gaussian"; }

double Quantity::value_as(const Dimension& expected) const {
    if (!(dim_ == expected)) {
        throw DimensionError("expected dimension " + expected.to_string() + ", got " + dim_.to_string());
    }
    return value_;
}

double Quantity::value_as(const Dimension& expected, Convention conv) const {
    const double v = value_as(expected);
    if (!expected.convention_neutral() && conv_ != conv) {
        throw ConventionError(std::string("expected ") + to_string(conv) + " quantity " + expected.to_string() +
                              ", got " + to_string(conv_));
    }
    return v;
}

Quantity& Quantity::operator+=(const Quantity& o) {
    require_same(*this, o, "add");
    conv_ = combined_convention(*this, o, "add");
    value_ += o.value_;
    return *this;
}

Quantity& Quantity::operator-=(const Quantity& o) {
    require_same(*this, o, "subtract");
    conv_ = combined_convention(*this, o, "subtract");
    value_ -= o.value_;
    return *this;
}

Quantity operator*(const Quantity& a, const Quantity& b) {
    return {a.value_ * b.value_, a.dim_ * b.dim_, combined_convention(a, b, "multiply")};
}

Quantity operator/(const Quantity& a, const Quantity& b) {
    return {a.value_ / b.value_, a.dim_ / b.dim_, combined_convention(a, b, "divide")};
}

Quantity operator/(double s, const Quantity& q) { return {s / q.value_, dims::none / q.dim_, q.conv_}; }

bool operator<(const Quantity& a, const Quantity& b) {
    require_same(a, b, "compare");
    return a.value_ < b.value_;
}

bool operator==(const Quantity& a, const Quantity& b) {
    require_same(a, b, "compare");
    return a.value_ == b.value_;
}

Quantity pow(const Quantity& q, int n) {
    return {std::pow(q.value(), n), q.dimension().pow(n), q.convention()};
}

Quantity sqrt(const Quantity& q) { return {std::sqrt(q.value()), q.dimension().sqrt(), q.convention()}; }

Quantity abs(const Quantity& q) { return {std::fabs(q.value()), q.dimension(), q.convention()}; }

Quantity convert_gaussian_si(const Quantity& q, ConversionDirection direction, std::optional<FieldKind> kind) {
    const Dimension& d = q.dimension();
    if (direction == ConversionDirection::si_to_gaussian) {
        if (q.convention() != Convention::si) {
            throw ConventionError("si_to_gaussian applied to a Gaussian quantity " + d.to_string());
        }
        if (d == dims::b_field_si) return gauss(q.value() * kGaussPerTesla);
        if (d == dims::e_field_si) return statvolts_per_cm(q.value() / kVoltsPerMeterPerStatvoltPerCm);
        if (d == dims::energy_density) return erg_per_cm3(q.value() * kErgPerCm3PerJoulePerM3);
        throw DimensionError("no Gaussian conversion for SI dimension " + d.to_string());
    }

    if (q.convention() != Convention::gaussian) {
        throw ConventionError("gaussian_to_si applied to an SI quantity " + d.to_string());
    }
    if (d == dims::energy_density) return joules_per_m3(q.value() / kErgPerCm3PerJoulePerM3);
    if (d == dims::field_gaussian) {
        if (!kind) throw DimensionError("Gaussian field " + d.to_string() + " is ambiguous without a FieldKind");
        if (*kind == FieldKind::magnetic) return tesla(q.value() / kGaussPerTesla);
        return volts_per_meter(q.value() * kVoltsPerMeterPerStatvoltPerCm);
    }
    throw DimensionError("no SI conversion for Gaussian dimension " + d.to_string());
}

Quantity to_gaussian_field(const Quantity& field, FieldKind kind) {
    if (field.convention() == Convention::gaussian) {
        field.value_as(dims::field_gaussian);
        return field;
    }
    const Dimension expected = kind == FieldKind::magnetic ? dims::b_field_si : dims::e_field_si;
    field.value_as(expected);
    return convert_gaussian_si(field, ConversionDirection::si_to_gaussian);
}

}  // namespace qwheel
