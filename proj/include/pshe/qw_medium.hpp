#pragma once

#include <complex>
#include <optional>

namespace pshe {

using cplx = std::complex<double>;

/// Absolute subband energies (meV). Carried for bookkeeping only.
struct LevelEnergies {
  double e_a = 0.0;
  double e_b = 0.0;
  double e_c = 0.0;
  double e_d = 0.0;

  bool operator==(const LevelEnergies&) const = default;
};

/// Parameters of the four-subband asymmetric double quantum well.
///
/// All rates, detunings and Rabi frequencies are in meV. `beta` carries the
/// density/dipole prefactor in the same energy units so that the
/// susceptibility is dimensionless. `g` and `f` are the dipole ratios
/// mu_ba/mu_ca and mu_bd/mu_cd.
struct QwParams {
  double gamma_bl = 0.0;  // population decay of |b>
  double gamma_bd = 0.0;  // dephasing of |b>
  double gamma_cl = 0.0;
  double gamma_cd = 0.0;
  double gamma_dl = 0.0;
  double gamma_dd = 0.0;
  double beta = 0.0;
  double g = 0.0;
  double f = 0.0;
  double delta = 0.0;    // half splitting, 2*delta = E_c - E_b
  double omega_c = 0.0;  // control Rabi frequency
  double delta_p = 0.0;  // probe detuning (steady-state solver only)
  double delta_c = 0.0;  // control detuning (steady-state solver only)
  std::optional<LevelEnergies> level_energies;

  bool operator==(const QwParams&) const = default;
};

/// Total decay rates and the tunneling cross-coupling derived from QwParams.
struct DecayBundle {
  double gamma2 = 0.0;
  double gamma3 = 0.0;
  double gamma4 = 0.0;
  double alpha = 0.0;  // sqrt(gamma_bl * gamma_cl)
  double p = 0.0;      // Fano interference strength in [0, 1]
};

struct Susceptibility {
  cplx chi;
};

/// Steady-state probability amplitudes of |b>, |c>, |d> with the ground
/// amplitude pinned to one.
struct Coherences {
  cplx b2;
  cplx b3;
  cplx b4;
};

/// Throws ValidationError naming the first offending field.
void validate(const QwParams& params);

DecayBundle derived_rates(const QwParams& params);

/// Closed-form susceptibility of the resonantly driven well
/// (probe and control detunings are taken as zero).
Susceptibility susceptibility(const QwParams& params);

/// Solves the weak-probe amplitude equations with all time derivatives set
/// to zero. Honors `delta_p` and `delta_c`. Throws SingularError when the
/// 3x3 system is degenerate.
Coherences steady_state_coherences(const QwParams& params, double omega_p);

// Ratio between the macroscopic polarization built from (g*B2 + B3)/Omega_p
// and the closed-form susceptibility. Fixed by matching the two routes at
// zero detuning; it comes out as exactly one.
inline constexpr double kCoherenceToSusceptibility = 1.0;

/// beta * kCoherenceToSusceptibility * (g*B2 + B3) / Omega_p.
Susceptibility susceptibility_from_coherences(const QwParams& params,
                                              const Coherences& amplitudes,
                                              double omega_p);

inline cplx permittivity(Susceptibility s) { return 1.0 + s.chi; }

}  // namespace pshe
