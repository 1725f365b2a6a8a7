#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dpcalc/energy.hpp"
#include "dpcalc/quantity.hpp"

namespace dpcalc {

/// Spontaneous-collapse timescale tau = h / dE. A vanishing instability
/// energy means the superposition is stable; that case is carried as an
/// explicit marker, never as a floating-point infinity.
struct CollapseEstimate {
  DeltaE delta_e;
  std::optional<Quantity> tau;  // seconds; empty when stable
  bool stable = false;
};

CollapseEstimate collapse_time(const DeltaE& delta_e);

/// tau(lambda * a0) / tau(a0) at fixed mass density, where the energy model
/// is dE = G m^2 / a with m = (4/3) pi a^3 rho. The ratio is lambda^-5,
/// computed through the model rather than asserted.
double size_scaling_tau(double a_factor, Quantity density, Quantity a0);

/// How an N-branch superposition is mapped onto branch masses when
/// evaluating the energy bound.
enum class MassConvention { FullMassPerComponent, BornWeighted };

/// Lower bound on the instability energy of an N-component spherical
/// superposition (branch centers on a shell of radius r, particle radius a):
///   FullMassPerComponent:  G N(N-1) m^2 / (2r) + (3N/5) G m^2 / a
///   BornWeighted:          the same expression with m -> m/N per branch.
/// The coincident-limit reference is the one-particle self energy
/// (3/5) G m^2 / a; violation_ratio = bound / coincident.
struct NComponentReport {
  int n = 1;
  Quantity shell_radius{0.0, dims::length};
  Quantity particle_radius{0.0, dims::length};
  MassConvention convention = MassConvention::FullMassPerComponent;
  Quantity bound{0.0, dims::energy};
  Quantity coincident_self_energy{0.0, dims::energy};
  double violation_ratio = 1.0;
};

NComponentReport n_component_bound(int n, Quantity mass, Quantity shell_radius,
                                   Quantity particle_radius,
                                   MassConvention convention);

/// violation_ratio tabulated for n = 1..n_max. Under FullMassPerComponent
/// the ratio grows ~n^2; under BornWeighted it stays bounded.
std::vector<std::pair<int, double>> conservation_violation_curve(
    int n_max, Quantity mass, Quantity shell_radius, Quantity particle_radius,
    MassConvention convention);

}  // namespace dpcalc
