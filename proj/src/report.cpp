#include "dpcalc/report.hpp"

#include <cstdio>
#include <sstream>

namespace dpcalc {

namespace {

const char* report_method_name(ReportMethod m) {
  switch (m) {
    case ReportMethod::ClosedForm:
      return "closed_form";
    case ReportMethod::MonteCarlo:
      return "monte_carlo";
    case ReportMethod::Mixed:
      return "mixed";
  }
  return "?";
}

// 9 significant digits, scientific: the report number format.
std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.8e", v);
  return buf;
}

std::string sci_or_null(const std::optional<double>& v) {
  return v ? sci(*v) : "null";
}

std::string quantity_or_null(const std::optional<Quantity>& q) {
  return q ? sci(q->value()) : "null";
}

ReportRow compute_row(const ScenarioConfig& cfg, double d_m,
                      bool force_monte_carlo) {
  const DistributionModel base = cfg.base_model();
  EnergyOptions opt;
  opt.convention_factor = cfg.convention_factor;
  opt.weighting = cfg.weighting;
  opt.policy =
      force_monte_carlo ? EvalPolicy::ForceMonteCarlo : EvalPolicy::Auto;
  opt.mc_samples = cfg.mc_samples;
  opt.seed = cfg.seed;

  const auto spec = SuperpositionSpec::symmetric_pair(base, meters(d_m));

  ReportRow row;
  row.d_m = d_m;

  const DeltaE grav = delta_e(spec, Interaction::Gravity, opt);
  row.de_grav = grav.value;
  row.method = grav.method;
  row.mc_fallback = grav.mc_fallback;
  if (grav.std_error) row.mc_std_error_J = grav.std_error->value();

  if (cfg.charge_C && *cfg.charge_C != 0.0) {
    const DeltaE em = delta_e(spec, Interaction::Electromagnetic, opt);
    row.de_em = em.value;
    if (grav.value.value() > 0.0) {
      row.em_ratio = em.value.value() / grav.value.value();
    }
  }

  const CollapseEstimate collapse = collapse_time(grav);
  row.stable = collapse.stable;
  row.tau = collapse.tau;

  if (d_m > 0.0) {
    const ForceEstimate fg = mutual_force(base, meters(d_m), Interaction::Gravity);
    row.f_grav = fg.value;
    row.force_point_approx = fg.point_approx_warning;
    if (cfg.charge_C && *cfg.charge_C != 0.0) {
      const ForceEstimate fe =
          mutual_force(base, meters(d_m), Interaction::Electromagnetic);
      row.f_em = fe.value;
      row.accel = fe.value / base.total_mass();
    }
  }
  return row;
}

std::string emit_json(const EnergyReport& r) {
  std::ostringstream o;
  o << "{\n";
  o << "  \"schema_version\": \"1\",\n";
  o << "  \"scenario\": \"" << r.scenario_name << "\",\n";
  o << "  \"metadata\": {\n";
  o << "    \"preset\": "
    << (r.preset ? '"' + *r.preset + '"' : std::string("null")) << ",\n";
  o << "    \"convention_factor\": " << sci(r.convention_factor) << ",\n";
  o << "    \"weighting\": \"" << weighting_name(r.weighting) << "\",\n";
  o << "    \"method\": \"" << report_method_name(r.method) << "\",\n";
  o << "    \"mc_samples\": " << r.mc_samples << ",\n";
  o << "    \"seed\": " << r.seed << ",\n";
  o << "    \"constants\": \"" << r.constants_version << "\",\n";
  o << "    \"warnings\": [";
  for (std::size_t i = 0; i < r.warnings.size(); ++i) {
    if (i) o << ", ";
    o << '"' << r.warnings[i] << '"';
  }
  o << "]\n";
  o << "  },\n";
  o << "  \"rows\": [";
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const ReportRow& row = r.rows[i];
    o << (i ? ",\n" : "\n");
    o << "    {\n";
    o << "      \"d_m\": " << sci(row.d_m) << ",\n";
    o << "      \"delta_e_grav_J\": " << sci(row.de_grav.value()) << ",\n";
    o << "      \"delta_e_grav_eV\": " << sci(convert_to_eV(row.de_grav))
      << ",\n";
    o << "      \"delta_e_em_J\": " << quantity_or_null(row.de_em) << ",\n";
    o << "      \"em_gravity_ratio\": " << sci_or_null(row.em_ratio) << ",\n";
    o << "      \"tau_s\": " << quantity_or_null(row.tau) << ",\n";
    o << "      \"stable\": " << (row.stable ? "true" : "false") << ",\n";
    o << "      \"F_grav_N\": " << quantity_or_null(row.f_grav) << ",\n";
    o << "      \"F_em_N\": " << quantity_or_null(row.f_em) << ",\n";
    o << "      \"accel_m_per_s2\": " << quantity_or_null(row.accel) << ",\n";
    o << "      \"method\": \""
      << (row.method == EvalMethod::MonteCarlo ? "monte_carlo" : "closed_form")
      << "\",\n";
    o << "      \"mc_std_error_J\": " << sci_or_null(row.mc_std_error_J)
      << ",\n";
    o << "      \"mc_fallback\": " << (row.mc_fallback ? "true" : "false")
      << ",\n";
    o << "      \"force_point_approx\": "
      << (row.force_point_approx ? "true" : "false") << "\n";
    o << "    }";
  }
  o << (r.rows.empty() ? "],\n" : "\n  ],\n");
  o << "  \"n_sweep\": [";
  for (std::size_t i = 0; i < r.sweep.size(); ++i) {
    const SweepRow& s = r.sweep[i];
    o << (i ? ",\n" : "\n");
    o << "    {\n";
    o << "      \"n\": " << s.n << ",\n";
    o << "      \"bound_full_J\": " << sci(s.bound_full.value()) << ",\n";
    o << "      \"ratio_full\": " << sci(s.ratio_full) << ",\n";
    o << "      \"bound_born_J\": " << sci(s.bound_born.value()) << ",\n";
    o << "      \"ratio_born\": " << sci(s.ratio_born) << ",\n";
    o << "      \"coincident_J\": " << sci(s.coincident.value()) << "\n";
    o << "    }";
  }
  o << (r.sweep.empty() ? "]\n" : "\n  ]\n");
  o << "}\n";
  return o.str();
}

std::string emit_csv(const EnergyReport& r) {
  std::ostringstream o;
  if (!r.rows.empty()) {
    o << "d_m,delta_e_grav_J,delta_e_grav_eV,delta_e_em_J,em_gravity_ratio,"
         "tau_s,F_grav_N,F_em_N,accel_m_per_s2\n";
    for (const ReportRow& row : r.rows) {
      o << sci(row.d_m) << ',' << sci(row.de_grav.value()) << ','
        << sci(convert_to_eV(row.de_grav)) << ',';
      o << (row.de_em ? sci(row.de_em->value()) : "") << ',';
      o << (row.em_ratio ? sci(*row.em_ratio) : "") << ',';
      o << (row.stable ? "stable" : (row.tau ? sci(row.tau->value()) : ""))
        << ',';
      o << (row.f_grav ? sci(row.f_grav->value()) : "") << ',';
      o << (row.f_em ? sci(row.f_em->value()) : "") << ',';
      o << (row.accel ? sci(row.accel->value()) : "") << '\n';
    }
  }
  if (!r.sweep.empty()) {
    if (!r.rows.empty()) o << '\n';
    o << "n,bound_full_J,ratio_full,bound_born_J,ratio_born,coincident_J\n";
    for (const SweepRow& s : r.sweep) {
      o << s.n << ',' << sci(s.bound_full.value()) << ',' << sci(s.ratio_full)
        << ',' << sci(s.bound_born.value()) << ',' << sci(s.ratio_born) << ','
        << sci(s.coincident.value()) << '\n';
    }
  }
  return o.str();
}

std::string cell(const std::optional<Quantity>& q) {
  return q ? sci(q->value()) : std::string("-");
}

std::string emit_table(const EnergyReport& r) {
  std::ostringstream o;
  o << "scenario: " << r.scenario_name << '\n';
  char buf[512];
  if (!r.rows.empty()) {
    std::snprintf(buf, sizeof buf,
                  "%-15s %-15s %-15s %-15s %-12s %-15s %-15s %-15s %-15s\n",
                  "d_m", "dE_grav_J", "dE_grav_eV", "dE_em_J", "em/grav",
                  "tau_s", "F_grav_N", "F_em_N", "accel_m_s2");
    o << buf;
    for (const ReportRow& row : r.rows) {
      const std::string tau =
          row.stable ? "stable" : (row.tau ? sci(row.tau->value()) : "-");
      const std::string ratio = row.em_ratio ? sci(*row.em_ratio) : "-";
      std::snprintf(buf, sizeof buf,
                    "%-15s %-15s %-15s %-15s %-12s %-15s %-15s %-15s %-15s\n",
                    sci(row.d_m).c_str(), sci(row.de_grav.value()).c_str(),
                    sci(convert_to_eV(row.de_grav)).c_str(),
                    cell(row.de_em).c_str(), ratio.c_str(), tau.c_str(),
                    cell(row.f_grav).c_str(), cell(row.f_em).c_str(),
                    cell(row.accel).c_str());
      o << buf;
    }
  }
  if (!r.sweep.empty()) {
    if (!r.rows.empty()) o << '\n';
    std::snprintf(buf, sizeof buf, "%-6s %-15s %-13s %-15s %-13s %-15s\n", "n",
                  "bound_full_J", "ratio_full", "bound_born_J", "ratio_born",
                  "coincident_J");
    o << buf;
    for (const SweepRow& s : r.sweep) {
      std::snprintf(buf, sizeof buf, "%-6d %-15s %-13s %-15s %-13s %-15s\n",
                    s.n, sci(s.bound_full.value()).c_str(),
                    sci(s.ratio_full).c_str(), sci(s.bound_born.value()).c_str(),
                    sci(s.ratio_born).c_str(), sci(s.coincident.value()).c_str());
      o << buf;
    }
  }
  o << '\n';
  o << "seed=" << r.seed << "  mc_samples=" << r.mc_samples
    << "  convention_factor=" << r.convention_factor
    << "  weighting=" << weighting_name(r.weighting)
    << "  method=" << report_method_name(r.method)
    << "  constants=" << r.constants_version << '\n';
  for (const std::string& w : r.warnings) {
    o << "warning: " << w << '\n';
  }
  return o.str();
}

}  // namespace

EnergyReport run_scenario(const ScenarioConfig& cfg, bool force_monte_carlo) {
  EnergyReport report;
  report.scenario_name = cfg.name;
  report.preset = cfg.preset;
  report.convention_factor = cfg.convention_factor;
  report.weighting = cfg.weighting;
  report.mc_samples = cfg.mc_samples;
  report.seed = cfg.seed;

  bool any_mc = false;
  bool any_closed = false;

  for (double d : cfg.separations_m) {
    ReportRow row;
    try {
      row = compute_row(cfg, d, force_monte_carlo);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw Error("scenario '" + cfg.name + "', separation " + sci(d) +
                  " m: " + e.what());
    }
    (row.method == EvalMethod::MonteCarlo ? any_mc : any_closed) = true;
    if (row.mc_fallback) {
      report.warnings.push_back(
          "no closed form at separation " + sci(d) +
          " m; Monte Carlo fallback (std error " +
          (row.mc_std_error_J ? sci(*row.mc_std_error_J) : std::string("?")) +
          " J)");
    }
    if (row.force_point_approx) {
      report.warnings.push_back(
          "separation " + sci(d) +
          " m is below the distribution size; point-approximation forces are "
          "indicative only");
    }
    report.rows.push_back(std::move(row));
  }

  if (cfg.has_sweep()) {
    const Quantity mass = kilograms(cfg.mass_kg);
    const Quantity a = meters(cfg.radius_m);
    const Quantity r = meters(cfg.shell_radius_m.value_or(cfg.radius_m));
    for (int n : *cfg.n_list) {
      const NComponentReport full = n_component_bound(
          n, mass, r, a, MassConvention::FullMassPerComponent);
      const NComponentReport born =
          n_component_bound(n, mass, r, a, MassConvention::BornWeighted);
      report.sweep.push_back({.n = n,
                              .bound_full = full.bound,
                              .ratio_full = full.violation_ratio,
                              .bound_born = born.bound,
                              .ratio_born = born.violation_ratio,
                              .coincident = full.coincident_self_energy});
    }
    any_closed = true;
  }

  report.method = any_mc ? (any_closed ? ReportMethod::Mixed
                                       : ReportMethod::MonteCarlo)
                         : ReportMethod::ClosedForm;
  return report;
}

std::string emit_report(const EnergyReport& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json:
      return emit_json(report);
    case OutputFormat::Csv:
      return emit_csv(report);
    case OutputFormat::Table:
      return emit_table(report);
  }
  throw Error("unreachable");
}

}  // namespace dpcalc
