#include "dpcalc/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

namespace dpcalc {

namespace {

using nlohmann::json;

// Shortest decimal form that parses back to exactly the same double, so the
// canonical config echo is a true identity under parse_scenario.
std::string double_str(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, ptr};
}

// 1-based line of the first occurrence of "key" in the raw document; 0 when
// the key is not present literally (e.g. defaults).
int line_of(const std::string& text, const std::string& key) {
  const auto pos = text.find('"' + key + '"');
  if (pos == std::string::npos) return 0;
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() +
                                                           static_cast<long>(pos),
                                         '\n'));
}

[[noreturn]] void fail(const std::string& text, const std::string& key,
                       const std::string& msg) {
  const int line = line_of(text, key);
  std::string where = "scenario";
  if (line > 0) where += " line " + std::to_string(line);
  throw ConfigError(where + ": " + msg);
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "name",          "preset",        "shape",       "mass_kg",
      "charge_C",      "radius_m",      "sigma_m",     "separations_m",
      "n_list",        "shell_radius_m", "weighting",  "convention_factor",
      "mc_samples",    "seed",          "format"};
  return keys;
}

// Keys that may accompany a preset; everything else is fixed by the preset.
const std::set<std::string>& preset_override_keys() {
  static const std::set<std::string> keys{
      "name",       "preset", "weighting", "convention_factor",
      "mc_samples", "seed",   "format"};
  return keys;
}

// Bare physics names a user might try without the unit suffix.
const char* unit_hint(const std::string& key) {
  if (key == "mass") return "mass_kg";
  if (key == "charge") return "charge_C";
  if (key == "radius") return "radius_m";
  if (key == "sigma") return "sigma_m";
  if (key == "separations" || key == "separation") return "separations_m";
  if (key == "shell_radius") return "shell_radius_m";
  return nullptr;
}

double number_field(const std::string& text, const json& j,
                    const std::string& key) {
  const auto& v = j.at(key);
  if (!v.is_number()) {
    fail(text, key, "'" + key + "' must be a number");
  }
  const double d = v.get<double>();
  if (!std::isfinite(d)) {
    fail(text, key, "'" + key + "' must be finite");
  }
  return d;
}

double positive_field(const std::string& text, const json& j,
                      const std::string& key) {
  const double d = number_field(text, j, key);
  if (!(d > 0.0)) {
    fail(text, key,
         "'" + key + "' must be > 0 (got " + double_str(d) + ")");
  }
  return d;
}

std::string string_field(const std::string& text, const json& j,
                         const std::string& key) {
  const auto& v = j.at(key);
  if (!v.is_string()) {
    fail(text, key, "'" + key + "' must be a string");
  }
  return v.get<std::string>();
}

Shape parse_shape(const std::string& text, const std::string& s) {
  if (s == "point") return Shape::Point;
  if (s == "uniform_sphere") return Shape::UniformSphere;
  if (s == "gaussian") return Shape::Gaussian;
  fail(text, "shape",
       "'shape' must be one of point, uniform_sphere, gaussian (got '" + s +
           "')");
}

Weighting parse_weighting(const std::string& text, const std::string& s) {
  if (s == "full") return Weighting::FullMass;
  if (s == "born") return Weighting::Born;
  fail(text, "weighting", "'weighting' must be full or born (got '" + s + "')");
}

OutputFormat parse_format(const std::string& text, const std::string& s) {
  if (s == "table") return OutputFormat::Table;
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  fail(text, "format",
       "'format' must be table, json or csv (got '" + s + "')");
}

}  // namespace

const char* format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::Table:
      return "table";
    case OutputFormat::Json:
      return "json";
    case OutputFormat::Csv:
      return "csv";
  }
  return "?";
}

const char* weighting_name(Weighting w) {
  return w == Weighting::FullMass ? "full" : "born";
}

DistributionModel ScenarioConfig::base_model() const {
  std::optional<Quantity> charge;
  if (charge_C) charge = coulombs(*charge_C);
  switch (shape) {
    case Shape::Point:
      return DistributionModel::point(kilograms(mass_kg), charge);
    case Shape::UniformSphere:
      return DistributionModel::uniform_sphere(meters(radius_m),
                                               kilograms(mass_kg), charge);
    case Shape::Gaussian:
      return DistributionModel::gaussian(meters(sigma_m), kilograms(mass_kg),
                                         charge);
  }
  throw Error("unreachable");
}

std::vector<std::string> preset_names() {
  return {"trapped_ion", "penrose_micron", "n_component_sweep"};
}

std::string preset_summary(const std::string& name) {
  if (name == "trapped_ion") {
    return "two point branches, m = 1e-23 kg, q = e, d = 0.1 um; forces, "
           "acceleration and EM/gravity ratio";
  }
  if (name == "penrose_micron") {
    return "two point branches, m = 1.5e-17 kg (mass implied by dE = G m^2/a "
           "= 1e-19 eV at a = 1 um), d = 1 um; collapse time";
  }
  if (name == "n_component_sweep") {
    return "N-branch spherical superposition, m = 1.5e-17 kg, a = r = 1 um; "
           "energy bound and conservation-violation ratio, both mass "
           "conventions";
  }
  throw ConfigError("unknown preset '" + name + "'");
}

ScenarioConfig preset_config(const std::string& name) {
  ScenarioConfig c;
  c.name = name;
  c.preset = name;
  if (name == "trapped_ion") {
    c.shape = Shape::Point;
    c.mass_kg = 1e-23;
    c.charge_C = Constants::codata2018().elementary_charge.value();
    c.separations_m = {1e-7};
    c.weighting = Weighting::FullMass;
    return c;
  }
  if (name == "penrose_micron") {
    c.shape = Shape::Point;
    c.mass_kg = 1.5e-17;
    c.separations_m = {1e-6};
    c.weighting = Weighting::FullMass;
    return c;
  }
  if (name == "n_component_sweep") {
    c.shape = Shape::UniformSphere;
    c.mass_kg = 1.5e-17;
    c.radius_m = 1e-6;
    c.shell_radius_m = 1e-6;
    c.n_list = std::vector<int>{1, 2, 3, 4, 5, 6, 8, 10, 12, 16, 20};
    c.weighting = Weighting::FullMass;
    return c;
  }
  throw ConfigError("unknown preset '" + name + "'; available: trapped_ion, "
                    "penrose_micron, n_component_sweep");
}

ScenarioConfig parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t byte = std::min(e.byte, text.size());
    const int line =
        1 + static_cast<int>(std::count(text.begin(),
                                        text.begin() + static_cast<long>(byte),
                                        '\n'));
    throw ConfigError("scenario line " + std::to_string(line) +
                      ": JSON syntax error: " + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("scenario: document must be a JSON object");
  }

  // Key audit before anything else so typos fail fast.
  for (const auto& [key, value] : doc.items()) {
    if (known_keys().count(key)) continue;
    if (const char* hint = unit_hint(key)) {
      fail(text, key,
           "'" + key + "' is missing its unit; use '" + hint + "'");
    }
    fail(text, key, "unknown key '" + key + "'");
  }

  ScenarioConfig cfg;
  const bool has_preset = doc.contains("preset");
  if (has_preset) {
    cfg = preset_config(string_field(text, doc, "preset"));
    for (const auto& [key, value] : doc.items()) {
      if (!preset_override_keys().count(key)) {
        fail(text, key,
             "field '" + key + "' conflicts with preset '" + *cfg.preset +
                 "'; presets fix the physics fields");
      }
    }
  } else {
    if (!doc.contains("name")) {
      throw ConfigError("scenario: 'name' is required");
    }
    if (!doc.contains("shape")) {
      throw ConfigError("scenario: 'shape' is required");
    }
    if (!doc.contains("mass_kg")) {
      throw ConfigError("scenario: 'mass_kg' is required");
    }
    cfg.shape = parse_shape(text, string_field(text, doc, "shape"));
    cfg.mass_kg = positive_field(text, doc, "mass_kg");

    if (doc.contains("charge_C")) {
      cfg.charge_C = number_field(text, doc, "charge_C");
    }
    if (doc.contains("radius_m")) {
      cfg.radius_m = positive_field(text, doc, "radius_m");
    }
    if (doc.contains("sigma_m")) {
      cfg.sigma_m = positive_field(text, doc, "sigma_m");
    }
    if (doc.contains("separations_m")) {
      const auto& arr = doc.at("separations_m");
      if (!arr.is_array() || arr.empty()) {
        fail(text, "separations_m",
             "'separations_m' must be a non-empty array of numbers");
      }
      for (const auto& v : arr) {
        if (!v.is_number() || !std::isfinite(v.get<double>()) ||
            v.get<double>() < 0.0) {
          fail(text, "separations_m",
               "'separations_m' entries must be finite and >= 0");
        }
        cfg.separations_m.push_back(v.get<double>());
      }
    }
    if (doc.contains("n_list")) {
      const auto& arr = doc.at("n_list");
      if (!arr.is_array() || arr.empty()) {
        fail(text, "n_list", "'n_list' must be a non-empty array of integers");
      }
      std::vector<int> ns;
      for (const auto& v : arr) {
        if (!v.is_number_integer() || v.get<int>() < 1) {
          fail(text, "n_list", "'n_list' entries must be integers >= 1");
        }
        ns.push_back(v.get<int>());
      }
      cfg.n_list = std::move(ns);
    }
    if (doc.contains("shell_radius_m")) {
      cfg.shell_radius_m = positive_field(text, doc, "shell_radius_m");
    }

    // Cross-field checks.
    if (cfg.shape == Shape::UniformSphere && cfg.radius_m == 0.0) {
      throw ConfigError("scenario: 'radius_m' is required for uniform_sphere");
    }
    if (cfg.shape == Shape::Gaussian && cfg.sigma_m == 0.0) {
      throw ConfigError("scenario: 'sigma_m' is required for gaussian");
    }
    if (cfg.shape != Shape::Gaussian && cfg.sigma_m != 0.0) {
      fail(text, "sigma_m", "'sigma_m' only applies to gaussian shapes");
    }
    if (cfg.shape != Shape::UniformSphere && cfg.radius_m != 0.0 &&
        !doc.contains("n_list")) {
      fail(text, "radius_m",
           "'radius_m' only applies to uniform_sphere shapes or n_list "
           "sweeps");
    }
    if (!cfg.has_separations() && !cfg.has_sweep()) {
      throw ConfigError(
          "scenario: provide 'separations_m' and/or 'n_list' so there is "
          "something to compute");
    }
    if (cfg.has_sweep()) {
      if (cfg.radius_m == 0.0) {
        throw ConfigError(
            "scenario: 'radius_m' (particle size a) is required with "
            "'n_list'");
      }
      if (!cfg.shell_radius_m) cfg.shell_radius_m = cfg.radius_m;
    }
  }

  // Common overridable knobs.
  if (doc.contains("name")) cfg.name = string_field(text, doc, "name");
  if (doc.contains("weighting")) {
    cfg.weighting = parse_weighting(text, string_field(text, doc, "weighting"));
  }
  if (doc.contains("convention_factor")) {
    cfg.convention_factor = positive_field(text, doc, "convention_factor");
  }
  if (doc.contains("mc_samples")) {
    const auto& v = doc.at("mc_samples");
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1000) {
      fail(text, "mc_samples", "'mc_samples' must be an integer >= 1000");
    }
    cfg.mc_samples = v.get<std::int64_t>();
  }
  if (doc.contains("seed")) {
    const auto& v = doc.at("seed");
    if (v.is_number_unsigned()) {
      cfg.seed = v.get<std::uint64_t>();
    } else {
      fail(text, "seed", "'seed' must be a non-negative integer");
    }
  }
  if (doc.contains("format")) {
    cfg.format = parse_format(text, string_field(text, doc, "format"));
  }
  return cfg;
}

std::string emit_config(const ScenarioConfig& cfg) {
  std::ostringstream o;
  o << "{\n";
  o << "  \"name\": \"" << cfg.name << "\",\n";
  if (cfg.preset) {
    // Presets own the physics fields; only the knobs are echoed so the
    // canonical form reparses without preset/custom conflicts.
    o << "  \"preset\": \"" << *cfg.preset << "\",\n";
  } else {
    o << "  \"shape\": \"" << shape_name(cfg.shape) << "\",\n";
    o << "  \"mass_kg\": " << double_str(cfg.mass_kg) << ",\n";
    if (cfg.charge_C) {
      o << "  \"charge_C\": " << double_str(*cfg.charge_C) << ",\n";
    }
    if (cfg.radius_m != 0.0) {
      o << "  \"radius_m\": " << double_str(cfg.radius_m) << ",\n";
    }
    if (cfg.sigma_m != 0.0) {
      o << "  \"sigma_m\": " << double_str(cfg.sigma_m) << ",\n";
    }
    if (cfg.has_separations()) {
      o << "  \"separations_m\": [";
      for (std::size_t i = 0; i < cfg.separations_m.size(); ++i) {
        if (i) o << ", ";
        o << double_str(cfg.separations_m[i]);
      }
      o << "],\n";
    }
    if (cfg.n_list) {
      o << "  \"n_list\": [";
      for (std::size_t i = 0; i < cfg.n_list->size(); ++i) {
        if (i) o << ", ";
        o << (*cfg.n_list)[i];
      }
      o << "],\n";
    }
    if (cfg.shell_radius_m) {
      o << "  \"shell_radius_m\": " << double_str(*cfg.shell_radius_m)
        << ",\n";
    }
  }
  o << "  \"weighting\": \"" << weighting_name(cfg.weighting) << "\",\n";
  o << "  \"convention_factor\": " << double_str(cfg.convention_factor)
    << ",\n";
  o << "  \"mc_samples\": " << cfg.mc_samples << ",\n";
  o << "  \"seed\": " << cfg.seed << ",\n";
  o << "  \"format\": \"" << format_name(cfg.format) << "\"\n";
  o << "}\n";
  return o.str();
}

}  // namespace dpcalc
