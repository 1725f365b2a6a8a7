#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dpcalc/distribution.hpp"
#include "dpcalc/energy.hpp"
#include "dpcalc/rng.hpp"

namespace dpcalc {

enum class OutputFormat { Table, Json, Csv };

const char* format_name(OutputFormat f);
const char* weighting_name(Weighting w);

/// A fully resolved computation request. Scenario files are JSON documents
/// with units spelled in the key names (mass_kg, separations_m, ...); see the
/// README for the schema. Every field has a deterministic default, including
/// the seed, so identical configs give byte-identical reports.
struct ScenarioConfig {
  std::string name;
  std::optional<std::string> preset;

  Shape shape = Shape::Point;
  double mass_kg = 0.0;
  std::optional<double> charge_C;
  double radius_m = 0.0;  // uniform_sphere radius; also the N-sweep size a
  double sigma_m = 0.0;   // gaussian width

  std::vector<double> separations_m;

  // N-component sweep section (present when n_list is set).
  std::optional<std::vector<int>> n_list;
  std::optional<double> shell_radius_m;

  Weighting weighting = Weighting::Born;
  double convention_factor = 1.0;
  std::int64_t mc_samples = 200'000;
  std::uint64_t seed = kDefaultSeed;
  OutputFormat format = OutputFormat::Table;

  bool has_separations() const { return !separations_m.empty(); }
  bool has_sweep() const { return n_list.has_value(); }

  /// The base distribution the scenario describes.
  DistributionModel base_model() const;
};

/// Built-in scenarios.
///   trapped_ion      two point branches, m = 1e-23 kg, q = e, d = 0.1 um
///   penrose_micron   two point branches, m = 1.5e-17 kg, d = 1 um (the mass
///                    implied by dE = G m^2/a = 1e-19 eV at a = 1 um)
///   n_component_sweep  spherical N-branch bound, m = 1.5e-17 kg, a = r = 1 um
std::vector<std::string> preset_names();
std::string preset_summary(const std::string& name);
ScenarioConfig preset_config(const std::string& name);

/// Parses and validates a scenario document. Unknown keys, missing unit
/// suffixes, non-positive lengths/masses and preset/custom conflicts are
/// ConfigErrors naming the offending field and line.
ScenarioConfig parse_scenario(const std::string& text);

/// Canonical JSON for a resolved config; parse_scenario(emit) is an identity.
std::string emit_config(const ScenarioConfig& config);

}  // namespace dpcalc
