#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dpcalc/collapse.hpp"
#include "dpcalc/energy.hpp"
#include "dpcalc/scenario.hpp"

namespace dpcalc {

enum class ReportMethod { ClosedForm, MonteCarlo, Mixed };

/// One separation of a two-branch scenario. Optional fields are absent when
/// the scenario has no charge (EM columns) or the superposition is stable
/// (tau). Forces are skipped at zero separation, where they are singular.
struct ReportRow {
  double d_m = 0.0;
  Quantity de_grav{0.0, dims::energy};
  std::optional<Quantity> de_em;
  std::optional<double> em_ratio;
  std::optional<Quantity> tau;
  bool stable = false;
  std::optional<Quantity> f_grav;
  std::optional<Quantity> f_em;
  std::optional<Quantity> accel;
  EvalMethod method = EvalMethod::ClosedForm;
  std::optional<double> mc_std_error_J;
  bool mc_fallback = false;
  bool force_point_approx = false;
};

/// One N of an N-component sweep; both mass conventions side by side.
struct SweepRow {
  int n = 1;
  Quantity bound_full{0.0, dims::energy};
  double ratio_full = 1.0;
  Quantity bound_born{0.0, dims::energy};
  double ratio_born = 1.0;
  Quantity coincident{0.0, dims::energy};
};

struct EnergyReport {
  std::string scenario_name;
  std::optional<std::string> preset;
  std::vector<ReportRow> rows;
  std::vector<SweepRow> sweep;

  // Metadata: a report is reproducible from these fields alone.
  double convention_factor = 1.0;
  Weighting weighting = Weighting::Born;
  ReportMethod method = ReportMethod::ClosedForm;
  std::int64_t mc_samples = 0;
  std::uint64_t seed = kDefaultSeed;
  std::string constants_version = Constants::version;
  std::vector<std::string> warnings;
};

/// Runs every separation and sweep entry of a validated config.
/// `force_monte_carlo` switches the kernel evaluation to the Monte Carlo
/// oracle path (the CLI `oracle` verb) for cross-validation.
EnergyReport run_scenario(const ScenarioConfig& config,
                          bool force_monte_carlo = false);

/// Serializes a report. JSON is one top-level object with a fixed key order
/// and numbers in 9-significant-digit scientific notation; CSV carries the
/// units in its column names; the table is for humans and ends with the
/// metadata footer.
std::string emit_report(const EnergyReport& report, OutputFormat format);

}  // namespace dpcalc
