#pragma once

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pshe/config.hpp"

namespace pshe {

inline constexpr const char* kCsvHeader =
    "swept,re_abs,rm_abs,ratio_em,ratio_me,phi_e,phi_m,"
    "delta_h_plus_lambda,delta_v_plus_lambda,flags";

/// Shortest round-trip text for a double (17 significant digits at most).
std::string format_double(double v);

/// "ok", or '|'-joined tokens from {h_singular, v_singular, error}.
std::string row_flags(const SweepRow& row);

/// Header plus one LF-terminated line per row.
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Numeric columns and flags of a CSV produced by write_csv.
struct CsvRow {
  double swept, re_abs, rm_abs, ratio_em, ratio_me, phi_e, phi_m;
  double delta_h_plus_lambda, delta_v_plus_lambda;
  std::string flags;
};

/// Throws std::runtime_error with the line number on malformed input.
std::vector<CsvRow> read_csv(std::istream& in);

struct RunSummary {
  std::optional<Resonance> resonance;
  std::optional<FlankShifts> flanks;
};

/// Resonance search and flank shifts for theta sweeps; empty otherwise.
RunSummary summarize(const RunConfig& config, int threads = 0);

nlohmann::json summary_json(const RunConfig& config,
                            const std::vector<SweepRow>& rows,
                            const RunSummary& summary);

}  // namespace pshe
