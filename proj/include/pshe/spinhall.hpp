#pragma once

#include <optional>

#include "pshe/strata.hpp"

namespace pshe {

/// Transverse spin-dependent shifts of the reflected beam.
///
/// The `*_lambda` values are in units of the probe wavelength; the `*_mm`
/// accessors give the same shift as an absolute length. The minus-spin
/// values are the exact negatives of the plus-spin values.
struct ShiftResult {
  double delta_h_plus = 0.0;
  double delta_h_minus = 0.0;
  double delta_v_plus = 0.0;
  double delta_v_minus = 0.0;
  double lambda_um = 0.0;
  /// |r_m| below the noise floor: horizontal values are huge or meaningless.
  bool h_singular = false;
  /// |r_e| below the noise floor.
  bool v_singular = false;

  double delta_h_plus_mm() const { return delta_h_plus * lambda_um * 1e-3; }
  double delta_h_minus_mm() const { return delta_h_minus * lambda_um * 1e-3; }
  double delta_v_plus_mm() const { return delta_v_plus * lambda_um * 1e-3; }
  double delta_v_minus_mm() const { return delta_v_minus * lambda_um * 1e-3; }
};

/// |r| below which a coefficient is considered numerically zero.
inline constexpr double kSingularReflection = 1e-14;

/// Closed-form horizontal/vertical shifts
///   delta_h(+/-) = -/+ (1/2pi) (1 + |r_e|/|r_m| cos(phi_e - phi_m)) cot(theta)
///   delta_v(+/-) = -/+ (1/2pi) (1 + |r_m|/|r_e| cos(phi_m - phi_e)) cot(theta)
/// in units of lambda. Throws DomainError unless 0 < theta < pi/2.
ShiftResult transverse_shifts(const ReflectionPair& pair, double lambda_um,
                              double theta);

/// Sampling of the incident Gaussian angular spectrum.
struct BeamSpec {
  double waist_um = 0.0;
  /// Half-width of the (k_x, k_y) window times the waist.
  double extent = 8.0;
  /// Samples per axis.
  int samples = 256;

  bool operator==(const BeamSpec&) const = default;

  /// Waist given in wavelengths, default grid.
  static BeamSpec with_waist_in_wavelengths(double lambda_um, double waist);
};

inline constexpr double kMinSpectrumExtent = 6.0;
inline constexpr int kMinSpectrumSamples = 256;

/// Throws ResolutionError when the grid does not resolve the beam and
/// ValidationError for a non-positive waist.
void validate(const BeamSpec& beam);

/// Riemann sum of |E_i(k_x,k_y)|^2 over the sampled window for
/// E_i = (w0/sqrt(2pi)) exp(-w0^2 (k_x^2 + k_y^2) / 4). Equals one for a
/// resolving grid, independent of w0.
double spectrum_norm(const BeamSpec& beam);

/// Real-space intensity centroids (units of lambda) of the circular
/// components of the reflected beam for h- and v-polarized input.
struct CentroidShift {
  double delta_h_plus = 0.0;
  double delta_h_minus = 0.0;
  double delta_v_plus = 0.0;
  double delta_v_minus = 0.0;
};

/// Numerical counterpart of transverse_shifts: builds the incident Gaussian
/// spectrum, applies the first-order reflection matrix with r_e, r_m fixed at
/// their central-angle values, splits into circular components and takes the
/// first moment of |E|^2 on the grid from a 2-D inverse DFT.
///
/// Agreement with the closed form requires w0 >= 100 * max(lambda, |shift|).
/// Returns std::nullopt when either coefficient is below
/// kSingularReflection.
std::optional<CentroidShift> centroid_shift_oracle(const ReflectionPair& pair,
                                                   const Kinematics& kin,
                                                   const BeamSpec& beam);

std::optional<CentroidShift> centroid_shift_oracle(const Stack& stack,
                                                   const Kinematics& kin,
                                                   const BeamSpec& beam);

}  // namespace pshe
