#include "qwheel/material.hpp"

#include <cmath>
#include <string>

#include <Eigen/Geometry>
#include <Eigen/SVD>

namespace qwheel {

MagnetoElectricTensor MagnetoElectricTensor::xy(double chi0_xy) {
    MagnetoElectricTensor t;
    t.chi0(0, 1) = chi0_xy;
    return t;
}

void MagnetoElectricTensor::validate() const {
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const double v = chi0(i, j);
            if (!std::isfinite(v)) throw DomainError("chi0 entry is not finite");
            if (std::fabs(v) > 1.0) {
                throw DomainError("|chi0(" + std::to_string(i) + "," + std::to_string(j) + ")| = " +
                                  std::to_string(std::fabs(v)) + " exceeds 1");
            }
        }
    }
    if (!std::isfinite(kappa1) || !std::isfinite(kappa2) || !std::isfinite(kappa3)) {
        throw DomainError("kappa response is not finite");
    }
}

void require_proper_rotation(const Mat3& r) {
    if (!r.allFinite()) throw DomainError("rotation has non-finite entries");
    const double det = r.determinant();
    if (det < 0.0) {
        throw DomainError("improper rotation (det = " + std::to_string(det) +
                          "); the parity behaviour of the magneto-electric tensor is not modelled");
    }
    if (std::fabs(det - 1.0) > kRotationTolerance) {
        throw DomainError("rotation determinant " + std::to_string(det) + " differs from +1");
    }
    const double orth = (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff();
    if (orth > kRotationTolerance) throw DomainError("rotation matrix is not orthogonal");
}

Mat3 rotation_about(const Vec3& axis, double angle) {
    const double n = axis.norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("rotation axis must be a nonzero finite vector");
    return Mat3(Eigen::AngleAxisd(angle, axis / n).toRotationMatrix());
}

Mat3 reorthonormalize(const Mat3& r) {
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat3 q = svd.matrixU() * svd.matrixV().transpose();
    if (q.determinant() < 0.0) {
        Eigen::Matrix3d u = svd.matrixU();
        u.col(2) *= -1.0;
        q = u * svd.matrixV().transpose();
    }
    return q;
}

MagnetoElectricTensor rotate_tensor(const MagnetoElectricTensor& t, const Mat3& r) {
    require_proper_rotation(r);
    MagnetoElectricTensor out = t;
    out.chi0 = r * t.chi0 * r.transpose();
    return out;
}

double chi_effective_gaussian(const MagnetoElectricTensor& t, double e_x, double b_y) {
    return t.chi0_xy() + t.kappa1 * e_x * b_y + t.kappa2 * e_x + t.kappa3 * b_y;
}

Quantity chi_effective(const MagnetoElectricTensor& t, const Quantity& e_x, const Quantity& b_y) {
    const double e = to_gaussian_field(e_x, FieldKind::electric).value();
    const double b = to_gaussian_field(b_y, FieldKind::magnetic).value();
    return dimensionless(chi_effective_gaussian(t, e, b));
}

Particle::Particle(Quantity size_a, Quantity density_rho, MagnetoElectricTensor tensor, Mat3 orientation,
                   double epsilon)
    : size_a_(size_a), density_rho_(density_rho), tensor_(std::move(tensor)), orientation_(orientation),
      epsilon_(epsilon) {
    const double a = size_a_.value_as(dims::length, Convention::si);
    const double rho = density_rho_.value_as(dims::mass_density, Convention::si);
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("particle size must be positive, got " + std::to_string(a));
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        throw DomainError("particle density must be positive, got " + std::to_string(rho));
    }
    if (!(epsilon_ >= 1.0) || !std::isfinite(epsilon_)) {
        throw DomainError("dielectric constant must be >= 1, got " + std::to_string(epsilon_));
    }
    tensor_.validate();
    require_proper_rotation(orientation_);
}

void Particle::rotate(const Mat3& r) {
    require_proper_rotation(r);
    orientation_ = reorthonormalize(r * orientation_);
}

Quantity particle_mass(const Particle& p) { return p.density() * pow(p.size(), 3); }

Quantity polarization(const Particle& p, const Quantity& e_x, const Quantity& b_y) {
    const Quantity e = to_gaussian_field(e_x, FieldKind::electric);
    const Quantity b = to_gaussian_field(b_y, FieldKind::magnetic);
    const Quantity chi = chi_effective(p.oriented_tensor(), e, b);
    return p.epsilon() * e + chi * b;
}

}  // namespace qwheel
