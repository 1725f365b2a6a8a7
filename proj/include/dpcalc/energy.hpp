#pragma once

#include <cstdint>
#include <optional>

#include "dpcalc/coulomb.hpp"
#include "dpcalc/distribution.hpp"
#include "dpcalc/quantity.hpp"
#include "dpcalc/rng.hpp"

namespace dpcalc {

enum class Interaction { Gravity, Electromagnetic };

/// How a branch amplitude maps to branch density. Born weighting scales each
/// branch by |w|^2 (the probability reading); FullMass gives every branch the
/// entire particle mass, the reading behind the usual point estimates
/// (dE ~ G m^2/a with the full m). The two give different numbers; presets
/// pick the one that reproduces the quantity they model.
enum class Weighting { FullMass, Born };

/// Evaluation policy for the kernel integrals inside delta_e.
enum class EvalPolicy {
  Auto,             // closed form, Monte Carlo fallback where unavailable
  ClosedFormOnly,   // error when no closed form exists
  ForceMonteCarlo,  // oracle mode: Monte Carlo even when a closed form exists
};

struct EnergyOptions {
  double convention_factor = 1.0;  // 4*pi selects the literal-prefactor variant
  Weighting weighting = Weighting::Born;
  EvalPolicy policy = EvalPolicy::Auto;
  std::int64_t mc_samples = 200'000;
  std::uint64_t seed = kDefaultSeed;
};

/// Instability energy of a two-branch superposition:
///   value = convention_factor * coupling * (self_1 + self_2 - cross)
/// where self_i is the energy-normalized self integral of branch i, cross is
/// the full mutual integral between the branches, and coupling is G or
/// 1/(4 pi eps0). For extended shapes this equals (coupling/2) times the
/// Coulomb norm of (rho_1 - rho_2) and is nonnegative.
///
/// Point branches carry a divergent self integral; for them the value is the
/// quasi-localized estimate coupling * mu_1 mu_2 / d (the mutual term only),
/// flagged by `quasi_localized`, with the self fields zeroed.
struct DeltaE {
  Quantity value{0.0, dims::energy};
  double convention_factor = 1.0;
  Interaction interaction = Interaction::Gravity;
  Weighting weighting = Weighting::Born;

  // Breakdown, in kg^2/m (gravity) or C^2/m (EM), before coupling.
  Quantity self_1{0.0, dims::mass_sq_per_length};
  Quantity self_2{0.0, dims::mass_sq_per_length};
  Quantity cross{0.0, dims::mass_sq_per_length};

  EvalMethod method = EvalMethod::ClosedForm;
  bool quasi_localized = false;
  bool mc_fallback = false;
  std::optional<Quantity> std_error;  // J; Monte Carlo paths only
  std::optional<std::int64_t> samples;
  std::optional<std::uint64_t> seed;
};

/// Evaluates the instability energy of a two-component superposition for the
/// requested interaction. Electromagnetic evaluation requires the base model
/// to carry a charge and reuses the identical geometry kernels, so the
/// EM/gravity quotient is exact by construction.
DeltaE delta_e(const SuperpositionSpec& spec, Interaction interaction,
               const EnergyOptions& options = {});

/// The ratio dE_em / dE_grav = q^2 / (4 pi eps0 G m^2). Computes both
/// energies, checks their quotient against the closed form to 1e-10
/// relative, and returns the closed form. Zero charge returns 0.
double em_gravity_ratio(const SuperpositionSpec& spec,
                        const EnergyOptions& options = {});

struct ForceEstimate {
  Quantity value{0.0, dims::force};
  // Point approximation questionable: separation below the distribution size.
  bool point_approx_warning = false;
};

/// Mutual force between the two branches at separation d, in the
/// point-mass/point-charge approximation: G m^2 / d^2 or q^2/(4 pi eps0 d^2).
ForceEstimate mutual_force(const DistributionModel& model, Quantity d,
                           Interaction interaction);

}  // namespace dpcalc
