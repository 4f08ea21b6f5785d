// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/LU>
#include <json.hpp>

#include "generators.hpp"
#include "oracles.hpp"
#include "pshe/config.hpp"
#include "pshe/report.hpp"
#include "pshe/spinhall.hpp"
#include "pshe/strata.hpp"
#include "pshe/sweep.hpp"

using namespace pshe;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;  // <= 0: no limit
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

Outcome susceptibility_oracle() {
  oracle::Rng rng(20240611);
  double worst = 0.0;
  const double omega_p = 1e-3;
  for (int n = 0; n < 1000; ++n) {
    const QwParams p = gen::random_qw_params(rng);
    const cplx closed = susceptibility(p).chi;
    const cplx solved =
        susceptibility_from_coherences(p, steady_state_coherences(p, omega_p), omega_p).chi;
    worst = std::max(worst, rel(solved, closed));
  }
  return {worst < 1e-10, fmt("worst relative error %.2e over 1000 draws", worst)};
}

Outcome tmm_suite() {
  double unimodular = 0.0, split = 0.0, airy = 0.0, passive = 0.0, normal = 0.0;

  oracle::Rng rng(3);
  for (int n = 0; n < 5000; ++n) {
    const cplx eps = gen::random_eps(rng, false);
    const Kinematics kin(rng.uniform(0.5, 12.0), rng.uniform(0.01, 1.56));
    // cap |Im phi| at 3; beyond that cos^2 + sin^2 cancels catastrophically
    const cplx kx = normal_wavevector(eps, kin.k(), kin.k_z());
    const Layer layer{eps, rng.uniform(0.0, std::min(5.0, 3.0 / std::max(kx.imag(), 1e-12)))};
    unimodular = std::max(unimodular, std::abs(layer_matrix_te(layer, kin).determinant() - 1.0));
    unimodular = std::max(unimodular, std::abs(layer_matrix_tm(layer, kin).determinant() - 1.0));
  }

  for (int n = 0; n < 500; ++n) {
    const Stack whole = gen::random_stack(rng, n % 2 == 0);
    std::vector<Layer> halves;
    for (const Layer& l : whole.layers()) {
      halves.push_back({l.epsilon, l.thickness_um / 2});
      halves.push_back({l.epsilon, l.thickness_um / 2});
    }
    const Kinematics kin(rng.uniform(0.8, 4.0), rng.uniform(0.05, 1.5));
    const ReflectionPair a = reflection_pair(whole, kin);
    const ReflectionPair b = reflection_pair(Stack(halves), kin);
    split = std::max({split, std::abs(a.r_e - b.r_e), std::abs(a.r_m - b.r_m)});
  }

  for (int n = 0; n < 1000; ++n) {
    const cplx eps = gen::random_dielectric(rng);
    const double d = rng.uniform(0.01, 3.0);
    const double lambda = rng.uniform(0.8, 4.0);
    const double theta = rng.uniform(0.05, 1.5);
    const Kinematics kin(lambda, theta);
    const Stack slab({{eps, d}});
    const cplx te = oracle::airy_single_slab(eps, d, lambda, theta, false);
    const cplx tm = oracle::airy_single_slab(eps, d, lambda, theta, true);
    // the Brewster null of TM has no relative scale
    if (std::abs(tm) > 1e-6) airy = std::max(airy, rel(reflection_tm(slab, kin), tm));
    airy = std::max(airy, rel(reflection_te(slab, kin), te));
  }

  for (int n = 0; n < 2000; ++n) {
    const Stack stack = gen::random_stack(rng, true);
    const ReflectionPair p =
        reflection_pair(stack, Kinematics(rng.uniform(0.8, 4.0), rng.uniform(0.01, 1.56)));
    passive = std::max({passive, std::abs(p.r_e) - 1.0, std::abs(p.r_m) - 1.0});
  }

  for (int n = 0; n < 1000; ++n) {
    const Stack stack = gen::random_stack(rng, n % 2 == 0, false);
    const ReflectionPair p = reflection_pair(stack, Kinematics(rng.uniform(0.8, 4.0), 1e-8));
    normal = std::max(normal, std::abs(std::abs(p.r_e) - std::abs(p.r_m)));
  }

  const bool ok = unimodular < 1e-12 && split < 1e-12 && airy < 1e-10 && passive <= 1e-10 &&
                  normal < 1e-10;
  return {ok, fmt("|det-1| %.1e, split %.1e, Airy %.1e, max |r|-1 %.1e, TE/TM at normal %.1e",
                  unimodular, split, airy, passive, normal)};
}

Outcome centroid_oracle() {
  // presets at angles away from their resonances, plus synthetic pairs
  struct Point {
    const char* label;
    std::function<ReflectionPair(const Kinematics&)> pair;
    double theta;
  };
  std::vector<Point> points;
  for (const char* name : {"fig2", "fig4", "fig6a", "fig6b"}) {
    const Stack stack = make_preset(name).scenario.build_stack();
    for (double theta : {0.3, 0.6, 0.8, 1.2}) {
      points.push_back({name, [stack](const Kinematics& k) { return reflection_pair(stack, k); },
                        theta});
    }
  }
  for (auto [re, rm, theta] : {std::tuple{cplx(0.5, 0.1), cplx(0.3, -0.2), 0.7},
                               std::tuple{cplx(-0.2, 0.6), cplx(0.4, 0.4), 1.1},
                               std::tuple{cplx(0.9, 0.0), cplx(0.0, 0.7), 0.4},
                               std::tuple{cplx(0.3, 0.3), cplx(-0.5, 0.05), 1.35}}) {
    points.push_back({"synthetic", [re, rm](const Kinematics&) { return ReflectionPair{re, rm}; },
                      theta});
  }

  const double lambda = 1.85;
  const BeamSpec beam = BeamSpec::with_waist_in_wavelengths(lambda, 500.0);
  double worst = 0.0;
  std::string where;
  int evaluated = 0;
  for (const Point& pt : points) {
    const Kinematics kin(lambda, pt.theta);
    const ReflectionPair pair = pt.pair(kin);
    const ShiftResult closed = transverse_shifts(pair, lambda, pt.theta);
    const auto c = centroid_shift_oracle(pair, kin, beam);
    if (!c || closed.h_singular || closed.v_singular) continue;
    ++evaluated;
    for (double e : {rel(c->delta_h_plus, closed.delta_h_plus),
                     rel(c->delta_h_minus, closed.delta_h_minus),
                     rel(c->delta_v_plus, closed.delta_v_plus),
                     rel(c->delta_v_minus, closed.delta_v_minus)}) {
      if (e > worst) {
        worst = e;
        where = fmt("%s at theta %.2f", pt.label, pt.theta);
      }
    }
  }
  return {evaluated == 20 && worst < 0.01,
          fmt("%d points, worst relative error %.2e%% (%s)", evaluated, 100 * worst,
              where.c_str())};
}

Outcome antisymmetry() {
  oracle::Rng rng(17);
  bool exact = true;
  double phase_err = 0.0, scale_err = 0.0;
  for (int n = 0; n < 100000; ++n) {
    const ReflectionPair p{std::polar(rng.uniform(1e-3, 1.0), rng.uniform(-3.1, 3.1)),
                           std::polar(rng.uniform(1e-3, 1.0), rng.uniform(-3.1, 3.1))};
    const double theta = rng.uniform(0.05, 1.5);
    const ShiftResult s = transverse_shifts(p, 1.85, theta);
    exact = exact && s.delta_h_minus == -s.delta_h_plus && s.delta_v_minus == -s.delta_v_plus;

    const cplx phase = std::polar(1.0, rng.uniform(-3.1, 3.1));
    const double scale = rng.uniform(0.01, 100.0);
    const ShiftResult a = transverse_shifts({p.r_e * phase, p.r_m * phase}, 1.85, theta);
    const ShiftResult b = transverse_shifts({p.r_e * scale, p.r_m * scale}, 1.85, theta);
    // relative to max(1, |delta|): shifts range over many decades
    const double nh = std::max(1.0, std::abs(s.delta_h_plus));
    const double nv = std::max(1.0, std::abs(s.delta_v_plus));
    phase_err = std::max({phase_err, std::abs(a.delta_h_plus - s.delta_h_plus) / nh,
                          std::abs(a.delta_v_plus - s.delta_v_plus) / nv});
    scale_err = std::max({scale_err, std::abs(b.delta_h_plus - s.delta_h_plus) / nh,
                          std::abs(b.delta_v_plus - s.delta_v_plus) / nv});
  }
  return {exact && phase_err < 1e-12 && scale_err < 1e-12,
          fmt("antisymmetry %s over 1e5 draws, phase %.1e, scale %.1e",
              exact ? "exact" : "VIOLATED", phase_err, scale_err)};
}

Outcome fig2_reproduction() {
  const RunConfig c = make_preset("fig2");
  const Resonance r = find_resonance(c.scenario, c.resonance_window);
  const FlankShifts f = flank_shifts(c.scenario, r, c.resonance_window);
  const bool ok = !r.boundary_peak && r.theta_star >= 0.90 && r.theta_star <= 1.05 &&
                  r.ratio_em_peak > 100.0 && f.left_delta_h * f.right_delta_h < 0.0 &&
                  std::abs(f.left_delta_h) > 10.0 && std::abs(f.right_delta_h) > 10.0;
  return {ok, fmt("theta* %.6f, ratio peak %.0f, flanks %+.1f / %+.1f lambda", r.theta_star,
                  r.ratio_em_peak, f.left_delta_h, f.right_delta_h)};
}

Outcome control_field_suppression() {
  const RunConfig fig2 = make_preset("fig2");
  Scenario driven = fig2.scenario;
  driven.qw.omega_c = 6.0;
  const ThetaWindow w = fig2.resonance_window;

  // peak |shift| around each field's own resonance inside the window
  const Resonance r0 = find_resonance(fig2.scenario, w);
  const Resonance r6 = find_resonance(driven, w);
  const double peak0 = flank_shifts(fig2.scenario, r0, w).peak_abs();
  const double peak6 = flank_shifts(driven, r6, w).peak_abs();
  const bool suppressed = peak6 < peak0;
  // the same comparison pinned to the fig2 resonance angle
  const double at0 = std::abs(horizontal_shift_at(fig2.scenario, r0.theta_star));
  const double at6 = std::abs(horizontal_shift_at(driven, r0.theta_star));

  auto monotone = [](const char* preset, bool use_abs, bool increasing) {
    const RunConfig c = make_preset(preset);
    const auto rows = run_sweep(c.scenario, c.sweep);
    int breaks = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const double a = use_abs ? std::abs(rows[i - 1].delta_h_plus) : rows[i - 1].delta_h_plus;
      const double b = use_abs ? std::abs(rows[i].delta_h_plus) : rows[i].delta_h_plus;
      breaks += increasing ? !(b >= a) : !(b <= a);
    }
    return breaks;
  };
  const int b5a = monotone("fig5a", false, false);
  const int b5c = monotone("fig5c", true, true);
  const int b5d = monotone("fig5d", true, true);

  return {suppressed && b5a == 0 && b5c == 0 && b5d == 0,
          fmt("window peak |dh| %.1f (Oc=6) vs %.1f (Oc=0); at theta* %.1f vs %.1f; "
              "monotonicity breaks fig5a %d, fig5c %d, fig5d %d",
              peak6, peak0, at6, at0, b5a, b5c, b5d)};
}

Outcome tunneling_enhancement() {
  const RunConfig fig2 = make_preset("fig2");
  const RunConfig fig4 = make_preset("fig4");
  const Resonance r2 = find_resonance(fig2.scenario, fig2.resonance_window);
  const Resonance r4 = find_resonance(fig4.scenario, fig4.resonance_window);
  const FlankShifts f2 = flank_shifts(fig2.scenario, r2, fig2.resonance_window);
  const FlankShifts f4 = flank_shifts(fig4.scenario, r4, fig4.resonance_window);
  const bool ok = r4.ratio_em_peak > r2.ratio_em_peak &&
                  std::abs(f4.left_delta_h) > std::abs(f2.left_delta_h) &&
                  std::abs(f4.right_delta_h) > std::abs(f2.right_delta_h);
  return {ok, fmt("ratio peak %.0f vs %.0f; flanks %+.1f/%+.1f vs %+.1f/%+.1f lambda",
                  r4.ratio_em_peak, r2.ratio_em_peak, f4.left_delta_h, f4.right_delta_h,
                  f2.left_delta_h, f2.right_delta_h)};
}

Outcome gain_loss_amplification() {
  auto peak = [](const char* name) {
    const RunConfig c = make_preset(name);
    const Resonance r = find_resonance(c.scenario, c.resonance_window);
    return flank_shifts(c.scenario, r, c.resonance_window).peak_abs();
  };
  const double lossy = peak("fig6a");
  const double gain_loss = peak("fig6b");
  return {gain_loss >= 1.5 * lossy,
          fmt("peak |dh| %.1f (gain/loss) vs %.1f (lossy), factor %.1f", gain_loss, lossy,
              gain_loss / lossy)};
}

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd =
      std::string("\"") + SPINHALL_EXE + "\" " + args + " >" + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome cli_contract() {
  const fs::path dir = fs::temp_directory_path() / ("spinhall_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::vector<std::string> problems;
  for (const std::string& name : preset_names()) {
    const fs::path stem = dir / name;
    if (const int code = run_cli("run --preset " + name + " --out " + stem.string(),
                                 dir / "log.txt");
        code != 0) {
      problems.push_back(name + ": exit " + std::to_string(code));
      continue;
    }
    try {
      const RunConfig expected = make_preset(name);
      std::ifstream csv(fs::path(stem) += ".csv");
      const auto rows = read_csv(csv);
      if (static_cast<int>(rows.size()) != expected.sweep.samples) {
        problems.push_back(name + ": row count");
      }
      const auto summary = nlohmann::json::parse(slurp(fs::path(stem) += ".json"));
      if (config_from_json(summary.at("config")) != expected) {
        problems.push_back(name + ": summary config differs");
      }
      if (expected.sweep.variable == SweepVariable::theta && !summary.contains("resonance")) {
        problems.push_back(name + ": no resonance section");
      }
      const fs::path cfg = dir / (name + "_cfg.json");
      if (run_cli("preset " + name + " --out " + cfg.string(), dir / "log.txt") != 0 ||
          parse_config(slurp(cfg)) != expected) {
        problems.push_back(name + ": config round trip");
      }
    } catch (const std::exception& e) {
      problems.push_back(name + ": " + e.what());
    }
  }
  fs::remove_all(dir);
  std::string detail = fmt("%zu presets run", preset_names().size());
  for (const auto& p : problems) detail += "; " + p;
  return {problems.empty(), detail};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "susceptibility oracle equivalence", 1.0, susceptibility_oracle},
      {2, "transfer-matrix correctness suite", 5.0, tmm_suite},
      {3, "shift formula vs angular-spectrum centroid", 30.0, centroid_oracle},
      {4, "antisymmetry and invariances", 0.0, antisymmetry},
      {5, "fig2 resonance and sign change", 5.0, fig2_reproduction},
      {6, "control-field suppression", 0.0, control_field_suppression},
      {7, "tunneling enhancement", 0.0, tunneling_enhancement},
      {8, "gain-loss amplification", 0.0, gain_loss_amplification},
      {9, "CLI contract", 60.0, cli_contract},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool slow = c.time_limit_s > 0.0 && s >= c.time_limit_s;
    const bool pass = out.pass && !slow;
    failures += !pass;
    std::printf("[%s] criterion %d: %s | %s | %.2f s%s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                out.detail.c_str(), s, slow ? " (over time limit)" : "");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
