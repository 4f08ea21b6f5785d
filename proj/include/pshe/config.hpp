#pragma once

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pshe/sweep.hpp"

namespace pshe {

/// A complete, reproducible experiment: scenario, sweep grid and the angular
/// window searched for the resonance peak.
struct RunConfig {
  std::optional<std::string> preset;
  Scenario scenario;
  SweepSpec sweep;
  ThetaWindow resonance_window;

  bool operator==(const RunConfig&) const = default;
};

/// Malformed configuration document. `what()` carries the key path or the
/// parser's line/column.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<std::string>& preset_names();

/// Named presets fig2, fig3, fig4, fig5a-d, fig6a, fig6b.
/// Throws ConfigError for an unknown name.
RunConfig make_preset(std::string_view name);

/// Config document. Complex values are [re, im] arrays.
nlohmann::json to_json(const RunConfig& config);

/// Reads a config document. Unknown keys are rejected; keys missing from a
/// document that names a `preset` are taken from that preset. Throws
/// ConfigError with the offending key path.
RunConfig config_from_json(const nlohmann::json& doc);

/// Parses text (with line/column diagnostics on syntax errors) and then
/// behaves as config_from_json.
RunConfig parse_config(std::string_view text);

/// Every type-invariant violation in the config, one message per problem.
/// Empty when the config is runnable.
std::vector<std::string> validate(const RunConfig& config);

}  // namespace pshe
