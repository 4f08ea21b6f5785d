#include "pshe/qw_medium.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>
#include <string>

#include "pshe/errors.hpp"

namespace pshe {
namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kSingularFloor = 1e-30;

void require_non_negative(double value, const char* name) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    std::ostringstream os;
    os << name << " must be a finite value >= 0 (got " << value << ")";
    throw ValidationError(name, os.str());
  }
}

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    std::ostringstream os;
    os << name << " must be finite (got " << value << ")";
    throw ValidationError(name, os.str());
  }
}

}  // namespace

void validate(const QwParams& params) {
  require_non_negative(params.gamma_bl, "gamma_bl");
  require_non_negative(params.gamma_bd, "gamma_bd");
  require_non_negative(params.gamma_cl, "gamma_cl");
  require_non_negative(params.gamma_cd, "gamma_cd");
  require_non_negative(params.gamma_dl, "gamma_dl");
  require_non_negative(params.gamma_dd, "gamma_dd");
  require_non_negative(params.beta, "beta");
  require_non_negative(params.omega_c, "omega_c");
  require_finite(params.g, "g");
  require_finite(params.f, "f");
  require_finite(params.delta, "delta");
  require_finite(params.delta_p, "delta_p");
  require_finite(params.delta_c, "delta_c");
}

DecayBundle derived_rates(const QwParams& params) {
  validate(params);
  DecayBundle out;
  out.gamma2 = params.gamma_bl + params.gamma_bd;
  out.gamma3 = params.gamma_cl + params.gamma_cd;
  out.gamma4 = params.gamma_dl + params.gamma_dd;
  out.alpha = std::sqrt(params.gamma_bl * params.gamma_cl);
  const double norm = std::sqrt(out.gamma2 * out.gamma3);
  // alpha vanishes whenever norm does, so p -> 0 in that limit.
  out.p = norm > 0.0 ? out.alpha / norm : 0.0;
  return out;
}

Susceptibility susceptibility(const QwParams& params) {
  const DecayBundle rates = derived_rates(params);
  const double d = params.delta;
  const double g = params.g;
  const double f = params.f;
  const double a = rates.alpha;
  const double g2 = rates.gamma2;
  const double g3 = rates.gamma3;
  const double oc2 = params.omega_c * params.omega_c;

  const cplx a1 = -kI * d + kI * g * g * d + 2.0 * g * a + g2 + g * g * g3;
  const cplx a2 = d * d - a * a - kI * d * g3 + g2 * (kI * d + g3);
  const cplx a3 = -kI * d + kI * f * f * d + 2.0 * f * a + g2 + f * f * g3;

  const cplx denominator = a2 * rates.gamma4 + a3 * oc2;
  if (std::abs(denominator) < kSingularFloor) {
    throw SingularError("susceptibility denominator vanishes for the given "
                        "decay rates, splitting and control field");
  }
  const cplx numerator = a1 * rates.gamma4 + (f - g) * (f - g) * oc2;
  return {kI * params.beta * numerator / denominator};
}

Coherences steady_state_coherences(const QwParams& params, double omega_p) {
  const DecayBundle rates = derived_rates(params);
  if (!(omega_p > 0.0) || !std::isfinite(omega_p)) {
    throw ValidationError("omega_p", "omega_p must be a finite value > 0");
  }
  const double dp = params.delta_p;
  const double oc = params.omega_c;

  // Unknowns (B2, B3, B4) with B1 = 1. |b> sits at +delta and |c> at -delta
  // relative to the probe reference; this is the assignment under which the
  // closed form factorizes.
  Eigen::Matrix3cd m;
  m << kI * (kI * rates.gamma2 - dp + params.delta), cplx(rates.alpha),
      kI * params.f * oc,
      cplx(rates.alpha), kI * (kI * rates.gamma3 - dp - params.delta),
      kI * oc,
      kI * params.f * oc, kI * oc,
      kI * (kI * rates.gamma4 - dp + params.delta_c);
  Eigen::Vector3cd rhs;
  rhs << -kI * params.g * omega_p, -kI * omega_p, cplx(0.0);

  Eigen::FullPivLU<Eigen::Matrix3cd> lu(m);
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0 || std::abs(lu.maxPivot()) == 0.0 ||
      std::abs(lu.determinant()) < 1e-14 * scale * scale * scale) {
    std::ostringstream os;
    os << "steady-state system is singular (gamma2=" << rates.gamma2
       << ", gamma3=" << rates.gamma3 << ", gamma4=" << rates.gamma4
       << ", alpha=" << rates.alpha << ", delta=" << params.delta
       << ", omega_c=" << oc << ", delta_p=" << dp
       << ", delta_c=" << params.delta_c << ")";
    throw SingularError(os.str());
  }
  const Eigen::Vector3cd b = lu.solve(rhs);
  return {b(0), b(1), b(2)};
}

Susceptibility susceptibility_from_coherences(const QwParams& params,
                                              const Coherences& amplitudes,
                                              double omega_p) {
  return {params.beta * kCoherenceToSusceptibility *
          (params.g * amplitudes.b2 + amplitudes.b3) / omega_p};
}

}  // namespace pshe
