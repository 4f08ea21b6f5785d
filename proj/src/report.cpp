#include "pshe/report.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pshe {
namespace {

using nlohmann::json;

double parse_double(std::string_view field, std::size_t line) {
  double v = 0.0;
  if (field == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (field == "inf") return std::numeric_limits<double>::infinity();
  if (field == "-inf") return -std::numeric_limits<double>::infinity();
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw std::runtime_error("csv line " + std::to_string(line) +
                             ": not a number: '" + std::string(field) + "'");
  }
  return v;
}

// NaN/inf are not valid JSON numbers.
json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  (void)ec;
  return std::string(buf, ptr);
}

std::string row_flags(const SweepRow& row) {
  std::string flags;
  auto add = [&](const char* token) {
    if (!flags.empty()) flags += '|';
    flags += token;
  };
  if (row.h_singular) add("h_singular");
  if (row.v_singular) add("v_singular");
  if (row.error) add("error");
  return flags.empty() ? "ok" : flags;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kCsvHeader << '\n';
  for (const SweepRow& r : rows) {
    out << format_double(r.swept) << ',' << format_double(r.re_abs) << ','
        << format_double(r.rm_abs) << ',' << format_double(r.ratio_em) << ','
        << format_double(r.ratio_me) << ',' << format_double(r.phi_e) << ','
        << format_double(r.phi_m) << ',' << format_double(r.delta_h_plus) << ','
        << format_double(r.delta_v_plus) << ',' << row_flags(r) << '\n';
  }
}

std::vector<CsvRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error("csv line 1: unexpected header");
  }
  std::vector<CsvRow> rows;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != 10) {
      throw std::runtime_error("csv line " + std::to_string(number) +
                               ": expected 10 fields, got " +
                               std::to_string(fields.size()));
    }
    CsvRow r;
    double* numeric[] = {&r.swept,   &r.re_abs, &r.rm_abs,
                         &r.ratio_em, &r.ratio_me, &r.phi_e,
                         &r.phi_m,   &r.delta_h_plus_lambda, &r.delta_v_plus_lambda};
    for (std::size_t i = 0; i < 9; ++i) *numeric[i] = parse_double(fields[i], number);
    r.flags = std::string(fields[9]);
    rows.push_back(std::move(r));
  }
  return rows;
}

RunSummary summarize(const RunConfig& config, int threads) {
  RunSummary s;
  if (config.sweep.variable != SweepVariable::theta) return s;
  s.resonance = find_resonance(config.scenario, config.resonance_window,
                               kResonanceScanPoints, threads);
  s.flanks = flank_shifts(config.scenario, *s.resonance, config.resonance_window,
                          kResonanceScanPoints, threads);
  return s;
}

nlohmann::json summary_json(const RunConfig& config, const std::vector<SweepRow>& rows,
                            const RunSummary& summary) {
  json doc;
  doc["preset"] = config.preset ? json(*config.preset) : json(nullptr);
  doc["variable"] = to_string(config.sweep.variable);
  doc["samples"] = rows.size();
  doc["lambda_um"] = config.scenario.lambda_um;

  const QwParams& qw = config.scenario.qw;
  try {
    const DecayBundle rates = derived_rates(qw);
    doc["decay"] = {{"gamma2", rates.gamma2}, {"gamma3", rates.gamma3},
                    {"gamma4", rates.gamma4}, {"alpha", rates.alpha},
                    {"p", rates.p}};
    const cplx chi = susceptibility(qw).chi;
    const cplx eps2 = permittivity({chi});
    doc["chi"] = {chi.real(), chi.imag()};
    doc["effective_epsilon2"] = {eps2.real(), eps2.imag()};
  } catch (const std::exception& e) {
    doc["medium_error"] = e.what();
  }

  std::size_t errors = 0;
  std::size_t h_singular = 0;
  std::size_t v_singular = 0;
  double max_ratio = -1.0;
  double max_ratio_at = std::numeric_limits<double>::quiet_NaN();
  double max_abs_dh = -1.0;
  double max_abs_dh_at = std::numeric_limits<double>::quiet_NaN();
  for (const SweepRow& r : rows) {
    if (r.error) {
      ++errors;
      continue;
    }
    h_singular += r.h_singular;
    v_singular += r.v_singular;
    if (!r.h_singular && r.ratio_em > max_ratio) {
      max_ratio = r.ratio_em;
      max_ratio_at = r.swept;
    }
    if (!r.h_singular && std::abs(r.delta_h_plus) > max_abs_dh) {
      max_abs_dh = std::abs(r.delta_h_plus);
      max_abs_dh_at = r.swept;
    }
  }
  doc["grid"] = {{"failed_rows", errors},
                 {"h_singular_rows", h_singular},
                 {"v_singular_rows", v_singular},
                 {"max_ratio_em", number_or_null(max_ratio < 0 ? NAN : max_ratio)},
                 {"max_ratio_em_at", number_or_null(max_ratio_at)},
                 {"max_abs_delta_h_plus_lambda", number_or_null(max_abs_dh < 0 ? NAN : max_abs_dh)},
                 {"max_abs_delta_h_plus_at", number_or_null(max_abs_dh_at)}};

  if (summary.resonance) {
    const Resonance& res = *summary.resonance;
    json r = {{"window", {config.resonance_window.lo, config.resonance_window.hi}},
              {"theta_star", res.theta_star},
              {"ratio_em_peak", number_or_null(res.ratio_em_peak)},
              {"boundary_peak", res.boundary_peak}};
    if (summary.flanks) {
      const FlankShifts& f = *summary.flanks;
      const double mm_per_lambda = config.scenario.lambda_um * 1e-3;
      r["left_flank"] = {{"theta", f.left_theta},
                         {"delta_h_plus_lambda", number_or_null(f.left_delta_h)},
                         {"delta_h_plus_mm", number_or_null(f.left_delta_h * mm_per_lambda)}};
      r["right_flank"] = {{"theta", f.right_theta},
                          {"delta_h_plus_lambda", number_or_null(f.right_delta_h)},
                          {"delta_h_plus_mm", number_or_null(f.right_delta_h * mm_per_lambda)}};
      r["peak_abs_delta_h_plus_lambda"] = number_or_null(f.peak_abs());
    }
    doc["resonance"] = r;
  }
  return doc;
}

}  // namespace pshe
