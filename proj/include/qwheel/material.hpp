#pragma once

// Magneto-electric tensors, particles and their polarization response.

#include <Eigen/Core>

#include "qwheel/quantities.hpp"

namespace qwheel {

using Mat3 = Eigen::Matrix<double, 3, 3, Eigen::RowMajor>;
using Vec3 = Eigen::Vector3d;

/// Tolerance on det(R) = +1 and R^T R = I for accepted rotations.
inline constexpr double kRotationTolerance = 1e-12;

/// Intrinsic magneto-electric tensor chi0 (dimensionless, Gaussian) plus the
/// scalar field-induced responses of its xy component:
///
///     chi_xy = chi0_xy + kappa1 E_x B_y + kappa2 E_x + kappa3 B_y
///
/// The kappas are in Gaussian units (per statV/cm, per G, per statV/cm G).
struct MagnetoElectricTensor {
    Mat3 chi0 = Mat3::Zero();
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    double kappa3 = 0.0;

    /// Tensor with a single nonzero chi0_xy entry and no induced response.
    static MagnetoElectricTensor xy(double chi0_xy);

    double chi0_xy() const { return chi0(0, 1); }

    /// Throws DomainError on non-finite entries or |chi0_ij| > 1.
    void validate() const;
};

/// Accepts R only if it is orthogonal with det = +1 (within kRotationTolerance).
void require_proper_rotation(const Mat3& r);

/// Rotation matrix about `axis` (normalized here) by `angle` radians.
Mat3 rotation_about(const Vec3& axis, double angle);

/// Nearest proper rotation to `r` (polar decomposition).
Mat3 reorthonormalize(const Mat3& r);

/// chi0'_ij = R_ia R_jb chi0_ab.  The kappa responses are carried through
/// unchanged: no transformation law for them is assumed.
MagnetoElectricTensor rotate_tensor(const MagnetoElectricTensor& t, const Mat3& r);

/// chi_xy = chi0_xy + kappa1 E_x B_y + kappa2 E_x + kappa3 B_y.  Fields may be
/// given in SI or Gaussian; they are evaluated in Gaussian units.
Quantity chi_effective(const MagnetoElectricTensor& t, const Quantity& e_x, const Quantity& b_y);

/// Same, on raw Gaussian field values.
double chi_effective_gaussian(const MagnetoElectricTensor& t, double e_x, double b_y);

/// A cube of side a and density rho, mass rho a^3.
class Particle {
public:
    Particle(Quantity size_a, Quantity density_rho, MagnetoElectricTensor tensor, Mat3 orientation = Mat3::Identity(),
             double epsilon = 1.0);

    const Quantity& size() const { return size_a_; }
    const Quantity& density() const { return density_rho_; }
    const MagnetoElectricTensor& tensor() const { return tensor_; }
    const Mat3& orientation() const { return orientation_; }
    double epsilon() const { return epsilon_; }

    /// Intrinsic tensor expressed in the lab frame.
    MagnetoElectricTensor oriented_tensor() const { return rotate_tensor(tensor_, orientation_); }
    double oriented_chi0_xy() const { return oriented_tensor().chi0_xy(); }

    /// Applies `r` after the current orientation and re-orthonormalizes.
    void rotate(const Mat3& r);

private:
    Quantity size_a_;
    Quantity density_rho_;
    MagnetoElectricTensor tensor_;
    Mat3 orientation_;
    double epsilon_;
};

Quantity particle_mass(const Particle& p);

/// P_x = epsilon E_x + chi_xy(E_x, B_y) B_y, Gaussian field dimension.  The
/// lab-frame tensor of the particle supplies chi_xy.
Quantity polarization(const Particle& p, const Quantity& e_x, const Quantity& b_y);

}  // namespace qwheel
