// dpcalc: instability energies, collapse times and electromagnetic analogs
// for two-branch and N-branch spatial superpositions.
//
// Verbs:
//   run     compute a scenario (preset or file) and emit a report
//   oracle  same, but force the Monte Carlo kernel path (cross-validation)
//   check   validate a scenario and print its canonical config
//   presets list built-in scenarios
//
// Exit codes: 0 success, 2 configuration error, 3 computation error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "dpcalc/report.hpp"
#include "dpcalc/scenario.hpp"

namespace {

struct CommonArgs {
  std::string scenario_path;
  std::string preset;
  std::string format;
  std::string weighting;
  std::optional<std::int64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<double> convention;
  std::string output_path;
};

void add_scenario_options(CLI::App* cmd, CommonArgs* args) {
  cmd->add_option("--scenario", args->scenario_path,
                  "Path to a scenario JSON file");
  cmd->add_option("--preset", args->preset,
                  "Built-in scenario name (see `presets`)");
  cmd->add_option("--format", args->format, "Output format: table|json|csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  cmd->add_option("--samples", args->samples,
                  "Monte Carlo sample count (>= 1000)");
  cmd->add_option("--seed", args->seed, "Random seed (default 1729)");
  cmd->add_option("--convention", args->convention,
                  "Energy convention factor (default 1; 4*pi for the literal "
                  "prefactor variant)");
  cmd->add_option("--weighting", args->weighting,
                  "Branch mass weighting: full|born")
      ->check(CLI::IsMember({"full", "born"}));
  cmd->add_option("--output", args->output_path,
                  "Write the report to a file instead of stdout");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw dpcalc::ConfigError("cannot open scenario file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

dpcalc::ScenarioConfig resolve_config(const CommonArgs& args) {
  using dpcalc::ConfigError;
  if (!args.scenario_path.empty() && !args.preset.empty()) {
    throw ConfigError(
        "--scenario and --preset are mutually exclusive; pass one");
  }
  dpcalc::ScenarioConfig cfg;
  if (!args.scenario_path.empty()) {
    cfg = dpcalc::parse_scenario(read_file(args.scenario_path));
  } else if (!args.preset.empty()) {
    cfg = dpcalc::preset_config(args.preset);
  } else {
    throw ConfigError("pass --scenario <file> or --preset <name>");
  }

  if (!args.format.empty()) {
    if (args.format == "table") cfg.format = dpcalc::OutputFormat::Table;
    if (args.format == "json") cfg.format = dpcalc::OutputFormat::Json;
    if (args.format == "csv") cfg.format = dpcalc::OutputFormat::Csv;
  }
  if (!args.weighting.empty()) {
    cfg.weighting = args.weighting == "full" ? dpcalc::Weighting::FullMass
                                             : dpcalc::Weighting::Born;
  }
  if (args.samples) {
    if (*args.samples < 1000) {
      throw ConfigError("--samples must be >= 1000");
    }
    cfg.mc_samples = *args.samples;
  }
  if (args.seed) cfg.seed = *args.seed;
  if (args.convention) {
    if (!(*args.convention > 0.0)) {
      throw ConfigError("--convention must be > 0");
    }
    cfg.convention_factor = *args.convention;
  }
  return cfg;
}

void write_out(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) {
    throw dpcalc::Error("cannot open output file '" + output_path + "'");
  }
  out << text;
}

int run_verb(const CommonArgs& args, bool force_monte_carlo) {
  const dpcalc::ScenarioConfig cfg = resolve_config(args);
  const dpcalc::EnergyReport report =
      dpcalc::run_scenario(cfg, force_monte_carlo);
  write_out(dpcalc::emit_report(report, cfg.format), args.output_path);
  return 0;
}

int check_verb(const CommonArgs& args) {
  const dpcalc::ScenarioConfig cfg = resolve_config(args);
  write_out(dpcalc::emit_config(cfg), args.output_path);
  std::cerr << "ok: scenario '" << cfg.name << "' is valid\n";
  return 0;
}

int presets_verb() {
  for (const std::string& name : dpcalc::preset_names()) {
    std::cout << name << "\n    " << dpcalc::preset_summary(name) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Gravitational collapse energies, timescales and electromagnetic "
      "analogs for spatial superpositions"};
  app.require_subcommand(1);

  CommonArgs run_args, oracle_args, check_args;
  CLI::App* run = app.add_subcommand("run", "Compute a scenario");
  add_scenario_options(run, &run_args);
  CLI::App* oracle = app.add_subcommand(
      "oracle", "Compute a scenario on the forced Monte Carlo path");
  add_scenario_options(oracle, &oracle_args);
  CLI::App* check = app.add_subcommand(
      "check", "Validate a scenario and print its canonical config");
  add_scenario_options(check, &check_args);
  CLI::App* presets =
      app.add_subcommand("presets", "List built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help
    }
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) return run_verb(run_args, false);
    if (oracle->parsed()) return run_verb(oracle_args, true);
    if (check->parsed()) return check_verb(check_args);
    if (presets->parsed()) return presets_verb();
  } catch (const dpcalc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const dpcalc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
