#include "dpcalc/energy.hpp"

#include <cmath>
#include <string>

namespace dpcalc {

namespace {

// Effective amplitude carried by one branch: the full particle mass/charge,
// or the Born fraction |w|^2 of it.
double branch_amplitude(double total, const ComponentPlacement& c,
                        Weighting weighting) {
  return weighting == Weighting::FullMass ? total : std::norm(c.weight) * total;
}

Quantity coupling_for(Interaction interaction) {
  const auto& k = Constants::codata2018();
  return interaction == Interaction::Gravity ? k.G : k.coulomb_constant();
}

double total_amplitude(const SuperpositionSpec& spec, Interaction interaction) {
  if (interaction == Interaction::Gravity) {
    return spec.base().mass_kg();
  }
  const auto& q = spec.base().total_charge();
  if (!q) {
    throw ValueError(
        "delta_e: electromagnetic evaluation requires a charged base model");
  }
  return q->value();
}

Dimension kernel_dim(Interaction interaction) {
  return interaction == Interaction::Gravity ? dims::mass_sq_per_length
                                             : dims::charge_sq_per_length;
}

// Unit-amplitude kernel integrals shared by both interactions: both branch
// densities are the same base shape, so one set of geometric factors serves
// gravity and EM alike (which is what makes the EM/gravity quotient exact).
struct UnitKernels {
  double self = 0.0;     // energy-normalized unit self integral; 0 for points
  double self_se = 0.0;  // standard error when self was sampled
  double cross = 0.0;    // full unit mutual integral
  double cross_se = 0.0;
  EvalMethod method = EvalMethod::ClosedForm;
  bool fallback = false;
  bool quasi_localized = false;
  std::optional<std::int64_t> samples;
  std::optional<std::uint64_t> seed;
};

UnitKernels evaluate_unit_kernels(const SuperpositionSpec& spec,
                                  const EnergyOptions& opt) {
  const DistributionModel& base = spec.base();
  const auto& comps = spec.components();
  const Eigen::Vector3d& ca = comps[0].center;
  const Eigen::Vector3d& cb = comps[1].center;
  const double d = (ca - cb).norm();

  // Unit-mass view of the base shape, shared by both branches.
  const DistributionModel unit = [&] {
    switch (base.shape()) {
      case Shape::Point:
        return DistributionModel::point(kilograms(1.0));
      case Shape::UniformSphere:
        return DistributionModel::uniform_sphere(base.extent(), kilograms(1.0));
      case Shape::Gaussian:
        return DistributionModel::gaussian(base.extent(), kilograms(1.0));
    }
    throw Error("unreachable");
  }();

  UnitKernels out;

  if (base.shape() == Shape::Point) {
    if (d == 0.0) {
      throw SingularityError(
          "delta_e: point branches at zero separation are singular");
    }
    if (opt.policy == EvalPolicy::ForceMonteCarlo) {
      throw UnsupportedShapeError(
          "delta_e: Monte Carlo path needs an extended shape; point branches "
          "only admit the quasi-localized closed form");
    }
    out.quasi_localized = true;
    out.cross = 1.0 / d;
    return out;
  }

  KernelIntegral cross;
  switch (opt.policy) {
    case EvalPolicy::ForceMonteCarlo: {
      const KernelIntegral self =
          coulomb_self_mc(unit, opt.mc_samples, derive_seed(opt.seed, 1));
      out.self = self.value.value();
      out.self_se = self.std_error->value();
      cross = coulomb_cross_mc(unit, ca, unit, cb, opt.mc_samples,
                               derive_seed(opt.seed, 2));
      break;
    }
    case EvalPolicy::ClosedFormOnly:
      out.self = coulomb_self(unit).value.value();
      cross = coulomb_cross(unit, ca, unit, cb);
      break;
    case EvalPolicy::Auto:
      out.self = coulomb_self(unit).value.value();
      cross = coulomb_cross_auto(unit, ca, unit, cb, opt.mc_samples,
                                 derive_seed(opt.seed, 2));
      break;
  }
  out.cross = cross.value.value();
  out.method = cross.method;
  out.fallback = cross.fallback;
  if (cross.method == EvalMethod::MonteCarlo) {
    out.cross_se = cross.std_error->value();
    out.samples = cross.samples;
    out.seed = opt.seed;
  }
  return out;
}

}  // namespace

DeltaE delta_e(const SuperpositionSpec& spec, Interaction interaction,
               const EnergyOptions& options) {
  if (spec.size() != 2) {
    throw ValueError("delta_e: expected exactly 2 components, got " +
                     std::to_string(spec.size()));
  }
  if (!std::isfinite(options.convention_factor) ||
      options.convention_factor <= 0.0) {
    throw ValueError("delta_e: convention_factor must be positive and finite");
  }

  const double total = total_amplitude(spec, interaction);
  const auto& comps = spec.components();
  const double mu1 = branch_amplitude(total, comps[0], options.weighting);
  const double mu2 = branch_amplitude(total, comps[1], options.weighting);

  const UnitKernels k = evaluate_unit_kernels(spec, options);
  const Dimension kd = kernel_dim(interaction);

  DeltaE out;
  out.convention_factor = options.convention_factor;
  out.interaction = interaction;
  out.weighting = options.weighting;
  out.method = k.method;
  out.quasi_localized = k.quasi_localized;
  out.mc_fallback = k.fallback;
  out.samples = k.samples;
  out.seed = k.seed;
  out.self_1 = {mu1 * mu1 * k.self, kd};
  out.self_2 = {mu2 * mu2 * k.self, kd};
  out.cross = {mu1 * mu2 * k.cross, kd};

  // Self terms are energy-normalized (halved) and the cross term is the full
  // mutual integral, so self_1 + self_2 - cross is half the Coulomb norm of
  // rho_1 - rho_2 and cannot be negative. Point branches drop the divergent
  // self terms and keep the mutual term (the quasi-localized point estimate).
  double bracket;
  double bracket_se;
  if (k.quasi_localized) {
    bracket = mu1 * mu2 * k.cross;
    bracket_se = 0.0;
  } else {
    bracket = mu1 * mu1 * k.self + mu2 * mu2 * k.self - mu1 * mu2 * k.cross;
    // self_1 and self_2 come from one shared estimate: fully correlated.
    const double se_self = (mu1 * mu1 + mu2 * mu2) * k.self_se;
    const double se_cross = mu1 * mu2 * k.cross_se;
    bracket_se = std::sqrt(se_self * se_self + se_cross * se_cross);
  }

  if (bracket < 0.0) {
    // Closed forms are exact up to rounding; Monte Carlo may fluctuate below
    // zero by a few standard errors near the coincident limit. More than
    // that is an internal inconsistency.
    const double tol = k.method == EvalMethod::MonteCarlo
                           ? 3.0 * bracket_se
                           : 1e-12 * (mu1 * mu1 + mu2 * mu2) * k.self;
    if (-bracket > tol) {
      throw Error("delta_e: negative instability energy beyond tolerance (" +
                  std::to_string(bracket) + " kernel units)");
    }
    bracket = 0.0;
  }

  const Quantity coupling = coupling_for(interaction);
  out.value = options.convention_factor * (coupling * Quantity{bracket, kd});
  if (k.method == EvalMethod::MonteCarlo) {
    out.std_error =
        options.convention_factor * (coupling * Quantity{bracket_se, kd});
  }
  return out;
}

double em_gravity_ratio(const SuperpositionSpec& spec,
                        const EnergyOptions& options) {
  const double m = spec.base().mass_kg();
  const auto& charge = spec.base().total_charge();
  if (!charge) {
    throw ValueError("em_gravity_ratio: base model carries no charge");
  }
  const double q = charge->value();
  if (q == 0.0) return 0.0;

  const auto& k = Constants::codata2018();
  const double closed_form =
      (q * q * k.coulomb_constant().value()) / (k.G.value() * m * m);

  // Independent route: both energies through the kernel machinery. The
  // geometry factors are shared, so the quotient must reproduce the closed
  // form whatever the superposition looks like.
  const DeltaE grav = delta_e(spec, Interaction::Gravity, options);
  const DeltaE em = delta_e(spec, Interaction::Electromagnetic, options);
  if (grav.value.value() > 0.0) {
    const double quotient = em.value.value() / grav.value.value();
    if (std::abs(quotient - closed_form) > 1e-10 * std::abs(closed_form)) {
      throw Error(
          "em_gravity_ratio: energy quotient disagrees with the closed form "
          "(" +
          std::to_string(quotient) + " vs " + std::to_string(closed_form) +
          ")");
    }
  }
  return closed_form;
}

ForceEstimate mutual_force(const DistributionModel& model, Quantity d,
                           Interaction interaction) {
  const double sep = d.value_in(dims::length);
  if (sep == 0.0) {
    throw SingularityError("mutual_force: zero separation");
  }
  if (sep < 0.0) {
    throw ValueError("mutual_force: negative separation");
  }

  double amplitude;
  if (interaction == Interaction::Gravity) {
    amplitude = model.mass_kg();
  } else {
    const auto& q = model.total_charge();
    if (!q) {
      throw ValueError("mutual_force: model carries no charge");
    }
    amplitude = q->value();
  }

  const double coupling = coupling_for(interaction).value();
  ForceEstimate out;
  out.value = {coupling * amplitude * amplitude / (sep * sep), dims::force};
  out.point_approx_warning = sep < model.extent_m();
  return out;
}

}  // namespace dpcalc
