#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pshe/qw_medium.hpp"
#include "pshe/spinhall.hpp"
#include "pshe/strata.hpp"

namespace pshe {

/// Wall permittivities and thicknesses of the three-layer cavity. The
/// middle layer gets eps2 = 1 + chi from the quantum-well parameters.
struct StackTemplate {
  cplx eps1{2.22, 0.0};
  cplx eps3{2.22, 0.0};
  double d1_um = 0.2;  // both walls
  double d2_um = 5.0;  // intracavity layer

  bool operator==(const StackTemplate&) const = default;
};

/// Medium + cavity + probe: everything needed to evaluate one point.
struct Scenario {
  QwParams qw;
  StackTemplate stack;
  double lambda_um = 1.85;
  std::optional<BeamSpec> beam;

  /// eps2 = 1 + chi(qw).
  cplx intracavity_epsilon() const;
  Stack build_stack() const;

  bool operator==(const Scenario&) const = default;
};

enum class SweepVariable { theta, omega_c, delta };

const char* to_string(SweepVariable v);
/// Throws ValidationError for unknown names.
SweepVariable sweep_variable_from_string(const std::string& name);

struct SweepSpec {
  SweepVariable variable = SweepVariable::theta;
  double lo = 0.1;
  double hi = 1.5;
  int samples = 2001;
  /// Incidence angle held fixed for omega_c / delta sweeps.
  double theta = 0.98;

  bool operator==(const SweepSpec&) const = default;

  /// Swept value of sample i (lo and hi are hit exactly).
  double value_at(int i) const;
};

/// Throws ValidationError on an empty or reversed range, too few samples, or
/// an angle outside (0, pi/2).
void validate(const SweepSpec& spec);

struct SweepRow {
  double swept = 0.0;
  double theta = 0.0;
  cplx r_e;
  cplx r_m;
  double re_abs = 0.0;
  double rm_abs = 0.0;
  double ratio_em = 0.0;
  double ratio_me = 0.0;
  double phi_e = 0.0;
  double phi_m = 0.0;
  double delta_h_plus = 0.0;  // units of lambda
  double delta_v_plus = 0.0;
  bool h_singular = false;
  bool v_singular = false;
  /// Set when the point could not be evaluated; numeric fields are NaN.
  std::optional<std::string> error;
};

/// Evaluates one grid point. Never throws for numerical failures; they end
/// up in SweepRow::error.
SweepRow evaluate_point(const Scenario& scenario, const SweepSpec& spec,
                        double swept);

/// OpenMP-parallel sweep. `threads` <= 0 keeps the runtime default.
/// Output is bit-identical to run_sweep_serial.
std::vector<SweepRow> run_sweep(const Scenario& scenario, const SweepSpec& spec,
                                int threads = 0);

/// Single-threaded reference implementation of run_sweep.
std::vector<SweepRow> run_sweep_serial(const Scenario& scenario,
                                       const SweepSpec& spec);

struct ThetaWindow {
  double lo = 0.9;
  double hi = 1.05;

  bool operator==(const ThetaWindow&) const = default;
};

struct Resonance {
  double theta_star = 0.0;
  double ratio_em_peak = 0.0;
  /// The coarse maximum sat on a window edge; theta_star is that edge.
  bool boundary_peak = false;
};

inline constexpr int kResonanceScanPoints = 4001;
inline constexpr double kResonanceTolerance = 1e-7;

/// Coarse scan of |r_e|/|r_m| over the window followed by golden-section
/// refinement to kResonanceTolerance.
Resonance find_resonance(const Scenario& scenario, ThetaWindow window,
                         int scan_points = kResonanceScanPoints,
                         int threads = 0);

/// Horizontal plus-spin shift (units of lambda) at one angle.
double horizontal_shift_at(const Scenario& scenario, double theta);

/// Largest-magnitude horizontal shift on each side of a resonance.
struct FlankShifts {
  double left_theta = 0.0;
  double left_delta_h = 0.0;
  double right_theta = 0.0;
  double right_delta_h = 0.0;

  double peak_abs() const;
};

/// Scans [window.lo, theta_star] and [theta_star, window.hi] for the extreme
/// |delta_h_plus| and refines each with golden-section search.
FlankShifts flank_shifts(const Scenario& scenario, const Resonance& resonance,
                         ThetaWindow window,
                         int scan_points = kResonanceScanPoints,
                         int threads = 0);

}  // namespace pshe
