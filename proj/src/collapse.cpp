#include "dpcalc/collapse.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace dpcalc {

CollapseEstimate collapse_time(const DeltaE& de) {
  const double e = de.value.value_in(dims::energy);
  if (e < 0.0) {
    throw ValueError("collapse_time: negative instability energy");
  }
  CollapseEstimate out{.delta_e = de};
  if (e == 0.0) {
    out.stable = true;
    return out;
  }
  out.tau = Constants::codata2018().planck_h / de.value;
  return out;
}

double size_scaling_tau(double a_factor, Quantity density, Quantity a0) {
  if (!(a_factor > 0.0) || !std::isfinite(a_factor)) {
    throw ValueError("size_scaling_tau: scale factor must be > 0");
  }
  const double rho = density.value_in(dims::mass_density);
  const double a_base = a0.value_in(dims::length);
  if (!(rho > 0.0) || !(a_base > 0.0)) {
    throw ValueError("size_scaling_tau: density and size must be > 0");
  }

  const double G = Constants::codata2018().G.value();
  const auto de_of = [&](double a) {
    const double m = (4.0 / 3.0) * std::numbers::pi * a * a * a * rho;
    return G * m * m / a;
  };
  // tau = h/dE, so the ratio is dE(a0)/dE(lambda a0) = lambda^-5.
  return de_of(a_base) / de_of(a_factor * a_base);
}

NComponentReport n_component_bound(int n, Quantity mass, Quantity shell_radius,
                                   Quantity particle_radius,
                                   MassConvention convention) {
  if (n < 1) {
    throw ValueError("n_component_bound: n must be >= 1, got " +
                     std::to_string(n));
  }
  const double m_total = mass.value_in(dims::mass);
  const double r = shell_radius.value_in(dims::length);
  const double a = particle_radius.value_in(dims::length);
  if (!(m_total > 0.0) || !(r > 0.0) || !(a > 0.0)) {
    throw ValueError("n_component_bound: mass, r and a must be > 0");
  }

  const double G = Constants::codata2018().G.value();
  const double m_branch =
      convention == MassConvention::FullMassPerComponent ? m_total
                                                         : m_total / n;
  const double nd = static_cast<double>(n);
  const double pair_term = G * nd * (nd - 1.0) * m_branch * m_branch / (2.0 * r);
  const double self_term = (3.0 * nd / 5.0) * G * m_branch * m_branch / a;
  const double coincident = 0.6 * G * m_total * m_total / a;

  NComponentReport out;
  out.n = n;
  out.shell_radius = shell_radius;
  out.particle_radius = particle_radius;
  out.convention = convention;
  out.bound = {pair_term + self_term, dims::energy};
  out.coincident_self_energy = {coincident, dims::energy};
  out.violation_ratio = (pair_term + self_term) / coincident;
  return out;
}

std::vector<std::pair<int, double>> conservation_violation_curve(
    int n_max, Quantity mass, Quantity shell_radius, Quantity particle_radius,
    MassConvention convention) {
  if (n_max < 1) {
    throw ValueError("conservation_violation_curve: n_max must be >= 1");
  }
  std::vector<std::pair<int, double>> out;
  out.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    out.emplace_back(
        n, n_component_bound(n, mass, shell_radius, particle_radius,
                             convention)
               .violation_ratio);
  }
  return out;
}

}  // namespace dpcalc
