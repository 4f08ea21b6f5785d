#include "pshe/sweep.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pshe/errors.hpp"
#include "pshe/golden.hpp"

namespace pshe {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

SweepRow failed_row(double swept, double theta, std::string message) {
  SweepRow row;
  row.swept = swept;
  row.theta = theta;
  row.r_e = row.r_m = {kNaN, kNaN};
  row.re_abs = row.rm_abs = row.ratio_em = row.ratio_me = kNaN;
  row.phi_e = row.phi_m = row.delta_h_plus = row.delta_v_plus = kNaN;
  row.error = std::move(message);
  return row;
}

double ratio_em_at(const Scenario& scenario, const Stack& stack, double theta) {
  const Kinematics kin(scenario.lambda_um, theta);
  const ReflectionPair pair = reflection_pair(stack, kin);
  return std::abs(pair.r_e) / std::abs(pair.r_m);
}

// NaN (failed point) ranks below every real value.
double rank_value(double v) {
  return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
  }
  return xs;
}

template <class F>
std::vector<double> evaluate_grid(const std::vector<double>& xs, F&& f,
                                  int threads) {
  std::vector<double> ys(xs.size());
  const int n = static_cast<int>(xs.size());
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
  for (int i = 0; i < n; ++i) {
    try {
      ys[i] = f(xs[i]);
    } catch (const std::exception&) {
      ys[i] = kNaN;
    }
  }
  return ys;
}

void validate_window(ThetaWindow w) {
  if (!(w.lo > 0.0 && w.hi < std::numbers::pi / 2 && w.lo < w.hi)) {
    throw ValidationError("window", "theta window must satisfy 0 < lo < hi < pi/2");
  }
}

// Grid maximum of f over xs, refined between the neighbouring samples.
template <class F>
LineMaximum refine_grid_maximum(const std::vector<double>& xs,
                                const std::vector<double>& ys, F&& f) {
  const auto best = std::max_element(ys.begin(), ys.end(), [](double a, double b) {
    return rank_value(a) < rank_value(b);
  });
  const std::size_t i = static_cast<std::size_t>(best - ys.begin());
  LineMaximum coarse{xs[i], *best};
  if (i == 0 || i + 1 == xs.size()) return coarse;
  auto safe = [&](double x) {
    try {
      return rank_value(f(x));
    } catch (const std::exception&) {
      return -std::numeric_limits<double>::infinity();
    }
  };
  const LineMaximum fine =
      golden_section_maximize(safe, xs[i - 1], xs[i + 1], kResonanceTolerance);
  return fine.value > rank_value(coarse.value) ? fine : coarse;
}

}  // namespace

cplx Scenario::intracavity_epsilon() const { return permittivity(susceptibility(qw)); }

Stack Scenario::build_stack() const {
  return Stack({{stack.eps1, stack.d1_um},
                {intracavity_epsilon(), stack.d2_um},
                {stack.eps3, stack.d1_um}});
}

const char* to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::theta:
      return "theta";
    case SweepVariable::omega_c:
      return "omega_c";
    case SweepVariable::delta:
      return "delta";
  }
  return "unknown";
}

SweepVariable sweep_variable_from_string(const std::string& name) {
  if (name == "theta") return SweepVariable::theta;
  if (name == "omega_c") return SweepVariable::omega_c;
  if (name == "delta") return SweepVariable::delta;
  throw ValidationError("sweep.variable",
                        "sweep.variable must be one of theta, omega_c, delta (got '" +
                            name + "')");
}

double SweepSpec::value_at(int i) const {
  if (i == samples - 1) return hi;
  return lo + (hi - lo) * i / (samples - 1);
}

void validate(const SweepSpec& spec) {
  if (spec.samples < 2) {
    throw ValidationError("sweep.samples", "sweep.samples must be >= 2");
  }
  if (!std::isfinite(spec.lo) || !std::isfinite(spec.hi) || !(spec.lo < spec.hi)) {
    throw ValidationError("sweep.lo", "sweep range must satisfy lo < hi");
  }
  const double half_pi = std::numbers::pi / 2;
  if (spec.variable == SweepVariable::theta) {
    if (!(spec.lo > 0.0 && spec.hi < half_pi)) {
      throw ValidationError("sweep.lo", "theta must lie in (0, π/2)");
    }
  } else if (!(spec.theta > 0.0 && spec.theta < half_pi)) {
    throw ValidationError("sweep.theta", "theta must lie in (0, π/2)");
  }
  if (spec.variable == SweepVariable::omega_c && spec.lo < 0.0) {
    throw ValidationError("sweep.lo", "omega_c must be >= 0");
  }
}

SweepRow evaluate_point(const Scenario& scenario, const SweepSpec& spec,
                        double swept) {
  const double theta = spec.variable == SweepVariable::theta ? swept : spec.theta;
  try {
    Scenario local = scenario;
    if (spec.variable == SweepVariable::omega_c) local.qw.omega_c = swept;
    if (spec.variable == SweepVariable::delta) local.qw.delta = swept;

    const Kinematics kin(local.lambda_um, theta);
    const ReflectionPair pair = reflection_pair(local.build_stack(), kin);
    const ShiftResult shifts = transverse_shifts(pair, local.lambda_um, theta);

    SweepRow row;
    row.swept = swept;
    row.theta = theta;
    row.r_e = pair.r_e;
    row.r_m = pair.r_m;
    row.re_abs = std::abs(pair.r_e);
    row.rm_abs = std::abs(pair.r_m);
    row.ratio_em = row.re_abs / row.rm_abs;
    row.ratio_me = row.rm_abs / row.re_abs;
    row.phi_e = pair.phi_e();
    row.phi_m = pair.phi_m();
    row.delta_h_plus = shifts.delta_h_plus;
    row.delta_v_plus = shifts.delta_v_plus;
    row.h_singular = shifts.h_singular;
    row.v_singular = shifts.v_singular;
    return row;
  } catch (const std::exception& e) {
    return failed_row(swept, theta, e.what());
  }
}

std::vector<SweepRow> run_sweep(const Scenario& scenario, const SweepSpec& spec,
                                int threads) {
  validate(spec);
  std::vector<SweepRow> rows(spec.samples);
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
  for (int i = 0; i < spec.samples; ++i) {
    rows[i] = evaluate_point(scenario, spec, spec.value_at(i));
  }
  return rows;
}

std::vector<SweepRow> run_sweep_serial(const Scenario& scenario,
                                       const SweepSpec& spec) {
  validate(spec);
  std::vector<SweepRow> rows;
  rows.reserve(spec.samples);
  for (int i = 0; i < spec.samples; ++i) {
    rows.push_back(evaluate_point(scenario, spec, spec.value_at(i)));
  }
  return rows;
}

Resonance find_resonance(const Scenario& scenario, ThetaWindow window,
                         int scan_points, int threads) {
  validate_window(window);
  scan_points = std::max(scan_points, 2000);
  const Stack stack = scenario.build_stack();
  auto ratio = [&](double theta) { return ratio_em_at(scenario, stack, theta); };

  const std::vector<double> thetas = linspace(window.lo, window.hi, scan_points);
  const std::vector<double> ratios = evaluate_grid(thetas, ratio, threads);
  const LineMaximum peak = refine_grid_maximum(thetas, ratios, ratio);

  Resonance out;
  out.theta_star = peak.x;
  out.ratio_em_peak = peak.value;
  out.boundary_peak = peak.x == thetas.front() || peak.x == thetas.back();
  return out;
}

double horizontal_shift_at(const Scenario& scenario, double theta) {
  const Kinematics kin(scenario.lambda_um, theta);
  const ReflectionPair pair = reflection_pair(scenario.build_stack(), kin);
  return transverse_shifts(pair, scenario.lambda_um, theta).delta_h_plus;
}

double FlankShifts::peak_abs() const {
  return std::max(std::abs(left_delta_h), std::abs(right_delta_h));
}

FlankShifts flank_shifts(const Scenario& scenario, const Resonance& resonance,
                         ThetaWindow window, int scan_points, int threads) {
  validate_window(window);
  const Stack stack = scenario.build_stack();
  auto shift = [&](double theta) {
    const Kinematics kin(scenario.lambda_um, theta);
    return transverse_shifts(reflection_pair(stack, kin), scenario.lambda_um, theta)
        .delta_h_plus;
  };
  auto magnitude = [&](double theta) { return std::abs(shift(theta)); };

  auto side = [&](double lo, double hi) -> std::pair<double, double> {
    if (!(hi > lo)) {
      const double edge = lo;
      return {edge, shift(edge)};
    }
    const std::vector<double> thetas = linspace(lo, hi, std::max(scan_points / 2, 1000));
    const std::vector<double> mags = evaluate_grid(thetas, magnitude, threads);
    const LineMaximum best = refine_grid_maximum(thetas, mags, magnitude);
    return {best.x, shift(best.x)};
  };

  FlankShifts out;
  std::tie(out.left_theta, out.left_delta_h) = side(window.lo, resonance.theta_star);
  std::tie(out.right_theta, out.right_delta_h) = side(resonance.theta_star, window.hi);
  return out;
}

}  // namespace pshe
