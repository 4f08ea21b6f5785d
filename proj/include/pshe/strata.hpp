#pragma once

#include <Eigen/Core>

#include <complex>
#include <span>
#include <vector>

namespace pshe {

using cplx = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;

/// Homogeneous slab: relative permittivity and thickness in micrometres.
struct Layer {
  cplx epsilon{1.0, 0.0};
  double thickness_um = 0.0;

  bool operator==(const Layer&) const = default;
};

/// Ordered slabs between two vacuum half-spaces. Light arrives on the
/// first layer. Immutable once built.
class Stack {
 public:
  /// Throws ValidationError on an empty list, negative thickness or
  /// zero permittivity.
  explicit Stack(std::vector<Layer> layers);

  std::span<const Layer> layers() const noexcept { return layers_; }
  std::size_t size() const noexcept { return layers_.size(); }

  bool operator==(const Stack&) const = default;

 private:
  std::vector<Layer> layers_;
};

/// Probe wavelength (um) and incidence angle (rad) with derived wavevectors.
class Kinematics {
 public:
  /// Requires lambda > 0 and 0 < theta < pi/2 (DomainError otherwise).
  Kinematics(double lambda_um, double theta);

  double lambda_um() const noexcept { return lambda_um_; }
  double theta() const noexcept { return theta_; }
  /// Vacuum wavenumber 2*pi/lambda, 1/um.
  double k() const noexcept { return k_; }
  /// Conserved tangential wavevector k*sin(theta).
  double k_z() const noexcept { return k_z_; }
  /// Normalized normal wavevector of the ambient medium, cos(theta).
  double q0() const noexcept { return q0_; }

 private:
  double lambda_um_;
  double theta_;
  double k_;
  double k_z_;
  double q0_;
};

/// Normal wavevector sqrt(eps*k^2 - k_z^2) on the branch with Im >= 0;
/// a purely negative radicand maps to +i*sqrt(|.|).
cplx normal_wavevector(cplx epsilon, double k, double k_z);

/// Characteristic matrix [[cos phi, i sin phi / q], [i q sin phi, cos phi]]
/// of one slab for TE light, q = k_x/k, phi = k_x d.
Matrix2c layer_matrix_te(const Layer& layer, const Kinematics& kin);

/// As layer_matrix_te with admittance p = k_x/(k*eps). The propagation
/// phase is the same k_x d as for TE.
Matrix2c layer_matrix_tm(const Layer& layer, const Kinematics& kin);

/// Ordered products P1*P2*...*PN.
Matrix2c stack_matrix_te(const Stack& stack, const Kinematics& kin);
Matrix2c stack_matrix_tm(const Stack& stack, const Kinematics& kin);

/// Reflection amplitude from a total characteristic matrix with vacuum on
/// both sides. Throws SingularError if the denominator vanishes.
cplx reflection_from_matrix(const Matrix2c& total, double q0);

cplx reflection_te(const Stack& stack, const Kinematics& kin);
cplx reflection_tm(const Stack& stack, const Kinematics& kin);

struct ReflectionPair {
  cplx r_e;
  cplx r_m;

  /// arg(r_e) in (-pi, pi].
  double phi_e() const;
  double phi_m() const;
};

ReflectionPair reflection_pair(const Stack& stack, const Kinematics& kin);

}  // namespace pshe
