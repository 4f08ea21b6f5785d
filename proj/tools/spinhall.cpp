// Command-line front end: named presets, config files, CSV/JSON output.
#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pshe/config.hpp"
#include "pshe/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Source {
  std::string preset;
  std::string config_path;
};

void add_source_options(CLI::App* cmd, Source& src) {
  auto* p = cmd->add_option("--preset", src.preset, "Preset name")
                ->check(CLI::IsMember(pshe::preset_names()));
  auto* c = cmd->add_option("--config", src.config_path, "JSON config file");
  p->excludes(c);
}

pshe::RunConfig load(const Source& src) {
  if (!src.config_path.empty()) {
    std::ifstream in(src.config_path);
    if (!in) throw pshe::ConfigError("cannot open config '" + src.config_path + "'");
    std::stringstream text;
    text << in.rdbuf();
    return pshe::parse_config(text.str());
  }
  if (!src.preset.empty()) return pshe::make_preset(src.preset);
  throw pshe::ConfigError("one of --preset or --config is required");
}

pshe::ThetaWindow parse_window(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw pshe::ConfigError("--find-resonance expects 'lo,hi'");
  }
  try {
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw pshe::ConfigError("--find-resonance expects two numbers 'lo,hi'");
  }
}

int thread_count(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("SPINHALL_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring SPINHALL_THREADS='" << env << "'\n";
  }
  return 0;
}

bool write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

int print_diagnostics(const std::vector<std::string>& diagnostics) {
  for (const auto& d : diagnostics) std::cerr << "config error: " << d << '\n';
  return diagnostics.empty() ? kExitOk : kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photonic spin Hall shifts of a quantum-well cavity"};
  app.require_subcommand(1);

  Source src;
  std::string out_path;
  std::string format = "both";
  double lambda_um = 0.0;
  int threads = 0;
  std::string window;

  auto* run = app.add_subcommand("run", "Run a sweep and write CSV/JSON results");
  add_source_options(run, src);
  run->add_option("--out", out_path, "Output path; .csv and .json siblings are written");
  run->add_option("--format", format, "csv, json or both")
      ->check(CLI::IsMember({"csv", "json", "both"}));
  run->add_option("--lambda-um", lambda_um, "Override the probe wavelength (um)");
  run->add_option("--threads", threads, "Worker threads (default: SPINHALL_THREADS)");
  run->add_option("--find-resonance", window, "Resonance search window 'lo,hi' (rad)");

  auto* check = app.add_subcommand("validate", "Report config problems without running");
  add_source_options(check, src);

  std::string preset_name;
  auto* show = app.add_subcommand("preset", "Print a preset as a config document");
  show->add_option("name", preset_name)->required()->check(CLI::IsMember(pshe::preset_names()));
  show->add_option("--out", out_path, "Write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (*show) {
    const std::string text = pshe::to_json(pshe::make_preset(preset_name)).dump(2) + "\n";
    if (out_path.empty()) {
      std::cout << text;
    } else if (!write_text(out_path, text)) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return kExitIo;
    }
    return kExitOk;
  }

  pshe::RunConfig config;
  try {
    config = load(src);
    if (lambda_um != 0.0) config.scenario.lambda_um = lambda_um;
    if (!window.empty()) config.resonance_window = parse_window(window);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  if (*check) {
    const auto diagnostics = pshe::validate(config);
    if (diagnostics.empty()) std::cout << "ok\n";
    return print_diagnostics(diagnostics);
  }

  if (const int code = print_diagnostics(pshe::validate(config)); code != kExitOk) {
    return code;
  }

  const int nt = thread_count(threads);
  if (nt > 0) omp_set_num_threads(nt);

  const auto start = std::chrono::steady_clock::now();
  std::vector<pshe::SweepRow> rows;
  pshe::RunSummary summary;
  try {
    rows = pshe::run_sweep(config.scenario, config.sweep, nt);
    summary = pshe::summarize(config, nt);
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::filesystem::path stem =
      std::filesystem::path(out_path.empty() ? config.preset.value_or("run") : out_path);
  stem.replace_extension();
  std::filesystem::path csv_path = stem;
  csv_path += ".csv";
  std::filesystem::path json_path = stem;
  json_path += ".json";

  if (format != "json") {
    std::ostringstream csv;
    pshe::write_csv(csv, rows);
    if (!write_text(csv_path, csv.str())) {
      std::cerr << "error: cannot write '" << csv_path.string() << "'\n";
      return kExitIo;
    }
  }
  if (format != "csv") {
    nlohmann::json doc = pshe::summary_json(config, rows, summary);
    doc["config"] = pshe::to_json(config);
    doc["elapsed_s"] = seconds;
    if (!write_text(json_path, doc.dump(2) + "\n")) {
      std::cerr << "error: cannot write '" << json_path.string() << "'\n";
      return kExitIo;
    }
  }

  std::size_t failed = 0;
  for (const auto& r : rows) failed += r.error.has_value();
  if (failed == rows.size()) {
    std::cerr << "numerical failure: every sweep point failed ("
              << (rows.empty() ? std::string("no rows") : *rows.front().error) << ")\n";
    return kExitNumerical;
  }
  if (failed > 0) std::cerr << "warning: " << failed << " sweep points failed\n";
  return kExitOk;
}
