#include "pshe/config.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "pshe/errors.hpp"

namespace pshe {
namespace {

using nlohmann::json;

// Baseline parameters shared by every preset.
RunConfig base_scenario() {
  RunConfig c;
  QwParams& qw = c.scenario.qw;
  qw.gamma_bl = 1.36;
  qw.gamma_bd = 0.68;
  qw.gamma_cl = 1.36;
  qw.gamma_cd = 0.8;
  qw.gamma_dl = 0.8;
  qw.gamma_dd = 0.5;
  qw.beta = 0.0184;
  qw.g = -1.0;
  qw.f = 1.0;
  qw.delta = 2.0;
  qw.omega_c = 0.0;
  qw.level_energies = LevelEnergies{46.7, 174.8, 13.5, 296.3};
  c.scenario.stack = StackTemplate{{2.22, 0.0}, {2.22, 0.0}, 0.2, 5.0};
  c.scenario.lambda_um = 1.85;
  c.sweep = SweepSpec{SweepVariable::theta, 0.1, 1.5, 2001, 0.98};
  c.resonance_window = ThetaWindow{0.9, 1.05};
  return c;
}

RunConfig with_fig4_rates(RunConfig c) {
  c.scenario.qw.delta = 8.0;
  c.scenario.qw.gamma_bd = 1.36;
  c.scenario.qw.gamma_cd = 1.6;
  return c;
}

RunConfig fig5(SweepVariable variable, double theta) {
  RunConfig c = base_scenario();
  c.sweep.variable = variable;
  c.sweep.theta = theta;
  c.sweep.samples = 601;
  c.sweep.lo = 0.0;
  if (variable == SweepVariable::omega_c) {
    c.sweep.hi = 6.0;
  } else {
    c.scenario.qw.omega_c = 2.0;
    c.sweep.hi = 8.0;
  }
  return c;
}

const std::map<std::string, std::set<std::string>, std::less<>>& schema() {
  static const std::map<std::string, std::set<std::string>, std::less<>> s{
      {"", {"preset", "qw", "stack", "beam", "sweep", "resonance_window"}},
      {"qw",
       {"gamma_bl", "gamma_bd", "gamma_cl", "gamma_cd", "gamma_dl", "gamma_dd",
        "beta", "g", "f", "delta", "omega_c", "delta_p", "delta_c",
        "level_energies"}},
      {"qw.level_energies", {"e_a", "e_b", "e_c", "e_d"}},
      {"stack", {"eps1", "eps3", "d1_um", "d2_um"}},
      {"beam", {"lambda_um", "waist_um", "extent", "samples"}},
      {"sweep", {"variable", "lo", "hi", "samples", "theta"}},
  };
  return s;
}

void check_keys(const json& node, const std::string& path) {
  if (!node.is_object()) {
    throw ConfigError((path.empty() ? std::string("document") : path) +
                      ": expected an object");
  }
  const auto& known = schema().at(path);
  for (const auto& [key, value] : node.items()) {
    const std::string child = path.empty() ? key : path + "." + key;
    if (!known.count(key)) throw ConfigError("unknown key '" + child + "'");
    if (schema().count(child)) check_keys(value, child);
  }
}

// Overlays `patch` onto `base` object-wise.
void merge_into(json& base, const json& patch) {
  for (const auto& [key, value] : patch.items()) {
    if (value.is_object() && base.contains(key) && base[key].is_object()) {
      merge_into(base[key], value);
    } else {
      base[key] = value;
    }
  }
}

const json& require(const json& node, const std::string& path, const char* key) {
  if (!node.contains(key)) {
    throw ConfigError("missing key '" + (path.empty() ? key : path + "." + key) +
                      "' (and no preset supplies it)");
  }
  return node.at(key);
}

double read_number(const json& node, const std::string& path, const char* key) {
  const json& v = require(node, path, key);
  if (!v.is_number()) {
    throw ConfigError("key '" + path + "." + key + "' must be a number");
  }
  return v.get<double>();
}

double read_number_or(const json& node, const std::string& path, const char* key,
                      double fallback) {
  return node.contains(key) ? read_number(node, path, key) : fallback;
}

cplx read_complex(const json& node, const std::string& path, const char* key) {
  const json& v = require(node, path, key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ConfigError("key '" + path + "." + key +
                      "' must be a two-element [re, im] array");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

void check_min(std::vector<std::string>& out, double v, double lo,
               const std::string& name, bool strict = false) {
  const bool ok = std::isfinite(v) && (strict ? v > lo : v >= lo);
  if (!ok) {
    std::ostringstream os;
    os << name << " must be " << (strict ? "> " : ">= ") << lo << " (got " << v << ")";
    out.push_back(os.str());
  }
}

void check_finite(std::vector<std::string>& out, double v, const std::string& name) {
  if (!std::isfinite(v)) out.push_back(name + " must be finite");
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fig2",  "fig3",  "fig4",
                                              "fig5a", "fig5b", "fig5c",
                                              "fig5d", "fig6a", "fig6b"};
  return names;
}

RunConfig make_preset(std::string_view name) {
  RunConfig c;
  if (name == "fig2") {
    c = base_scenario();
  } else if (name == "fig3") {
    c = base_scenario();
    c.scenario.qw.omega_c = 6.0;
  } else if (name == "fig4") {
    c = with_fig4_rates(base_scenario());
  } else if (name == "fig5a") {
    c = fig5(SweepVariable::omega_c, 0.979);
  } else if (name == "fig5b") {
    c = fig5(SweepVariable::omega_c, 0.98);
  } else if (name == "fig5c") {
    c = fig5(SweepVariable::delta, 0.979);
  } else if (name == "fig5d") {
    c = fig5(SweepVariable::delta, 0.98);
  } else if (name == "fig6a") {
    c = with_fig4_rates(base_scenario());
    c.scenario.stack.eps1 = {2.22, 0.04};
    c.scenario.stack.eps3 = {2.22, 0.04};
  } else if (name == "fig6b") {
    c = with_fig4_rates(base_scenario());
    c.scenario.stack.eps1 = {2.22, 0.04};
    c.scenario.stack.eps3 = {2.22, -0.04};
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "'");
  }
  c.preset = std::string(name);
  return c;
}

nlohmann::json to_json(const RunConfig& config) {
  const Scenario& s = config.scenario;
  const QwParams& qw = s.qw;
  json doc;
  if (config.preset) doc["preset"] = *config.preset;
  json q = {{"gamma_bl", qw.gamma_bl}, {"gamma_bd", qw.gamma_bd},
            {"gamma_cl", qw.gamma_cl}, {"gamma_cd", qw.gamma_cd},
            {"gamma_dl", qw.gamma_dl}, {"gamma_dd", qw.gamma_dd},
            {"beta", qw.beta},         {"g", qw.g},
            {"f", qw.f},               {"delta", qw.delta},
            {"omega_c", qw.omega_c},   {"delta_p", qw.delta_p},
            {"delta_c", qw.delta_c}};
  if (qw.level_energies) {
    const LevelEnergies& e = *qw.level_energies;
    q["level_energies"] = {{"e_a", e.e_a}, {"e_b", e.e_b}, {"e_c", e.e_c}, {"e_d", e.e_d}};
  }
  doc["qw"] = q;
  doc["stack"] = {{"eps1", complex_json(s.stack.eps1)},
                  {"eps3", complex_json(s.stack.eps3)},
                  {"d1_um", s.stack.d1_um},
                  {"d2_um", s.stack.d2_um}};
  json beam = {{"lambda_um", s.lambda_um}};
  if (s.beam) {
    beam["waist_um"] = s.beam->waist_um;
    beam["extent"] = s.beam->extent;
    beam["samples"] = s.beam->samples;
  }
  doc["beam"] = beam;
  doc["sweep"] = {{"variable", to_string(config.sweep.variable)},
                  {"lo", config.sweep.lo},
                  {"hi", config.sweep.hi},
                  {"samples", config.sweep.samples},
                  {"theta", config.sweep.theta}};
  doc["resonance_window"] = {config.resonance_window.lo, config.resonance_window.hi};
  return doc;
}

RunConfig config_from_json(const nlohmann::json& input) {
  check_keys(input, "");

  json doc = json::object();
  std::optional<std::string> preset;
  if (input.contains("preset")) {
    if (!input["preset"].is_string()) throw ConfigError("key 'preset' must be a string");
    preset = input["preset"].get<std::string>();
    doc = to_json(make_preset(*preset));
  }
  merge_into(doc, input);

  RunConfig c;
  c.preset = preset;

  const json& q = require(doc, "", "qw");
  QwParams& qw = c.scenario.qw;
  qw.gamma_bl = read_number(q, "qw", "gamma_bl");
  qw.gamma_bd = read_number(q, "qw", "gamma_bd");
  qw.gamma_cl = read_number(q, "qw", "gamma_cl");
  qw.gamma_cd = read_number(q, "qw", "gamma_cd");
  qw.gamma_dl = read_number(q, "qw", "gamma_dl");
  qw.gamma_dd = read_number(q, "qw", "gamma_dd");
  qw.beta = read_number(q, "qw", "beta");
  qw.g = read_number(q, "qw", "g");
  qw.f = read_number(q, "qw", "f");
  qw.delta = read_number(q, "qw", "delta");
  qw.omega_c = read_number(q, "qw", "omega_c");
  qw.delta_p = read_number_or(q, "qw", "delta_p", 0.0);
  qw.delta_c = read_number_or(q, "qw", "delta_c", 0.0);
  if (q.contains("level_energies")) {
    const json& e = q["level_energies"];
    const std::string path = "qw.level_energies";
    qw.level_energies = LevelEnergies{
        read_number(e, path, "e_a"), read_number(e, path, "e_b"),
        read_number(e, path, "e_c"), read_number(e, path, "e_d")};
  }

  const json& st = require(doc, "", "stack");
  c.scenario.stack.eps1 = read_complex(st, "stack", "eps1");
  c.scenario.stack.eps3 = read_complex(st, "stack", "eps3");
  c.scenario.stack.d1_um = read_number(st, "stack", "d1_um");
  c.scenario.stack.d2_um = read_number(st, "stack", "d2_um");

  const json& beam = require(doc, "", "beam");
  c.scenario.lambda_um = read_number(beam, "beam", "lambda_um");
  if (beam.contains("waist_um")) {
    BeamSpec b;
    b.waist_um = read_number(beam, "beam", "waist_um");
    b.extent = read_number_or(beam, "beam", "extent", b.extent);
    b.samples = static_cast<int>(read_number_or(beam, "beam", "samples", b.samples));
    c.scenario.beam = b;
  } else if (beam.contains("extent") || beam.contains("samples")) {
    throw ConfigError("beam.extent/beam.samples given without beam.waist_um");
  }

  const json& sw = require(doc, "", "sweep");
  const json& var = require(sw, "sweep", "variable");
  if (!var.is_string()) throw ConfigError("key 'sweep.variable' must be a string");
  try {
    c.sweep.variable = sweep_variable_from_string(var.get<std::string>());
  } catch (const ValidationError& e) {
    throw ConfigError(e.what());
  }
  c.sweep.lo = read_number(sw, "sweep", "lo");
  c.sweep.hi = read_number(sw, "sweep", "hi");
  const json& samples = require(sw, "sweep", "samples");
  if (!samples.is_number_integer()) throw ConfigError("key 'sweep.samples' must be an integer");
  c.sweep.samples = samples.get<int>();
  c.sweep.theta = read_number_or(sw, "sweep", "theta", c.sweep.theta);

  if (doc.contains("resonance_window")) {
    const json& w = doc["resonance_window"];
    if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number()) {
      throw ConfigError("key 'resonance_window' must be a two-element [lo, hi] array");
    }
    c.resonance_window = {w[0].get<double>(), w[1].get<double>()};
  }
  return c;
}

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(e.what());
  }
  return config_from_json(doc);
}

std::vector<std::string> validate(const RunConfig& config) {
  std::vector<std::string> out;
  const QwParams& qw = config.scenario.qw;
  check_min(out, qw.gamma_bl, 0.0, "qw.gamma_bl");
  check_min(out, qw.gamma_bd, 0.0, "qw.gamma_bd");
  check_min(out, qw.gamma_cl, 0.0, "qw.gamma_cl");
  check_min(out, qw.gamma_cd, 0.0, "qw.gamma_cd");
  check_min(out, qw.gamma_dl, 0.0, "qw.gamma_dl");
  check_min(out, qw.gamma_dd, 0.0, "qw.gamma_dd");
  check_min(out, qw.beta, 0.0, "qw.beta");
  check_min(out, qw.omega_c, 0.0, "qw.omega_c");
  check_finite(out, qw.g, "qw.g");
  check_finite(out, qw.f, "qw.f");
  check_finite(out, qw.delta, "qw.delta");
  check_finite(out, qw.delta_p, "qw.delta_p");
  check_finite(out, qw.delta_c, "qw.delta_c");

  const StackTemplate& st = config.scenario.stack;
  check_min(out, st.d1_um, 0.0, "stack.d1_um");
  check_min(out, st.d2_um, 0.0, "stack.d2_um");
  for (const auto& [eps, name] : {std::pair{st.eps1, "stack.eps1"}, {st.eps3, "stack.eps3"}}) {
    if (!std::isfinite(eps.real()) || !std::isfinite(eps.imag()) || eps == cplx(0.0)) {
      out.push_back(std::string(name) + " must be finite and nonzero");
    }
  }

  check_min(out, config.scenario.lambda_um, 0.0, "beam.lambda_um", true);
  if (config.scenario.beam) {
    try {
      validate(*config.scenario.beam);
    } catch (const std::exception& e) {
      out.push_back(std::string("beam: ") + e.what());
    }
  }

  const SweepSpec& sw = config.sweep;
  const double half_pi = std::numbers::pi / 2;
  if (sw.samples < 2) out.push_back("sweep.samples must be >= 2");
  if (!(std::isfinite(sw.lo) && std::isfinite(sw.hi) && sw.lo < sw.hi)) {
    out.push_back("sweep range must satisfy lo < hi");
  }
  if (sw.variable == SweepVariable::theta) {
    if (!(sw.lo > 0.0 && sw.lo < half_pi && sw.hi > 0.0 && sw.hi < half_pi)) {
      out.push_back("theta must lie in (0, π/2) (sweep.lo/sweep.hi)");
    }
  } else if (!(sw.theta > 0.0 && sw.theta < half_pi)) {
    out.push_back("theta must lie in (0, π/2) (sweep.theta)");
  }
  if (sw.variable == SweepVariable::omega_c && sw.lo < 0.0) {
    out.push_back("sweep.lo must be >= 0 for an omega_c sweep");
  }

  const ThetaWindow& w = config.resonance_window;
  if (!(w.lo > 0.0 && w.hi < half_pi && w.lo < w.hi)) {
    out.push_back("theta must lie in (0, π/2) (resonance_window, with lo < hi)");
  }
  return out;
}

}  // namespace pshe
