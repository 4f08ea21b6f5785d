#include "pshe/strata.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "pshe/errors.hpp"

namespace pshe {
namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kSingularFloor = 1e-30;

// sin(x)/x, exact at the origin.
cplx sinc(cplx x) {
  if (std::abs(x) < 1e-4) {
    const cplx x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

// admittance_scale is 1 for TE and 1/eps for TM.
Matrix2c characteristic_matrix(const Layer& layer, const Kinematics& kin,
                               cplx admittance_scale) {
  const double k = kin.k();
  const cplx kx = normal_wavevector(layer.epsilon, k, kin.k_z());
  const cplx phase = kx * layer.thickness_um;
  const cplx admittance = admittance_scale * kx / k;
  const cplx c = std::cos(phase);
  const cplx s = std::sin(phase);

  Matrix2c m;
  // sin(phase)/admittance written as k*d*sinc(phase)/admittance_scale so a
  // grazing wave (k_x -> 0) stays finite.
  m(0, 0) = c;
  m(0, 1) = kI * k * layer.thickness_um * sinc(phase) / admittance_scale;
  m(1, 0) = kI * admittance * s;
  m(1, 1) = c;
  return m;
}

template <class LayerMatrix>
Matrix2c ordered_product(const Stack& stack, const Kinematics& kin,
                         LayerMatrix&& layer_matrix) {
  Matrix2c total = Matrix2c::Identity();
  for (const Layer& layer : stack.layers()) {
    total = total * layer_matrix(layer, kin);
  }
  return total;
}

double principal_arg(cplx z) {
  const double a = std::arg(z);
  return a <= -std::numbers::pi ? std::numbers::pi : a;
}

}  // namespace

Stack::Stack(std::vector<Layer> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) {
    throw ValidationError("layers", "a stack needs at least one layer");
  }
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const Layer& layer = layers_[i];
    std::ostringstream name;
    name << "layers[" << i << "]";
    if (!(layer.thickness_um >= 0.0) || !std::isfinite(layer.thickness_um)) {
      throw ValidationError(name.str() + ".thickness_um",
                            name.str() + ": thickness must be finite and >= 0");
    }
    if (layer.epsilon == cplx(0.0) || !std::isfinite(layer.epsilon.real()) ||
        !std::isfinite(layer.epsilon.imag())) {
      throw ValidationError(name.str() + ".epsilon",
                            name.str() + ": permittivity must be finite and nonzero");
    }
  }
}

Kinematics::Kinematics(double lambda_um, double theta)
    : lambda_um_(lambda_um), theta_(theta) {
  if (!(lambda_um > 0.0) || !std::isfinite(lambda_um)) {
    throw DomainError("wavelength must be positive and finite");
  }
  if (!(theta > 0.0 && theta < std::numbers::pi / 2)) {
    throw DomainError("theta must lie in (0, pi/2)");
  }
  k_ = 2.0 * std::numbers::pi / lambda_um;
  k_z_ = k_ * std::sin(theta);
  q0_ = std::cos(theta);
}

cplx normal_wavevector(cplx epsilon, double k, double k_z) {
  const cplx radicand = epsilon * k * k - k_z * k_z;
  if (radicand.imag() == 0.0 && radicand.real() < 0.0) {
    return {0.0, std::sqrt(-radicand.real())};
  }
  cplx root = std::sqrt(radicand);
  if (root.imag() < 0.0) root = -root;
  return root;
}

Matrix2c layer_matrix_te(const Layer& layer, const Kinematics& kin) {
  return characteristic_matrix(layer, kin, 1.0);
}

Matrix2c layer_matrix_tm(const Layer& layer, const Kinematics& kin) {
  return characteristic_matrix(layer, kin, 1.0 / layer.epsilon);
}

Matrix2c stack_matrix_te(const Stack& stack, const Kinematics& kin) {
  return ordered_product(stack, kin, layer_matrix_te);
}

Matrix2c stack_matrix_tm(const Stack& stack, const Kinematics& kin) {
  return ordered_product(stack, kin, layer_matrix_tm);
}

cplx reflection_from_matrix(const Matrix2c& p, double q0) {
  const cplx numerator =
      q0 * (p(1, 1) - p(0, 0)) - (q0 * q0 * p(0, 1) - p(1, 0));
  const cplx denominator =
      q0 * (p(1, 1) + p(0, 0)) - (q0 * q0 * p(0, 1) + p(1, 0));
  if (std::abs(denominator) < kSingularFloor) {
    throw SingularError("reflection denominator vanishes (degenerate geometry)");
  }
  return numerator / denominator;
}

cplx reflection_te(const Stack& stack, const Kinematics& kin) {
  return reflection_from_matrix(stack_matrix_te(stack, kin), kin.q0());
}

cplx reflection_tm(const Stack& stack, const Kinematics& kin) {
  return reflection_from_matrix(stack_matrix_tm(stack, kin), kin.q0());
}

double ReflectionPair::phi_e() const { return principal_arg(r_e); }
double ReflectionPair::phi_m() const { return principal_arg(r_m); }

ReflectionPair reflection_pair(const Stack& stack, const Kinematics& kin) {
  return {reflection_te(stack, kin), reflection_tm(stack, kin)};
}

}  // namespace pshe
