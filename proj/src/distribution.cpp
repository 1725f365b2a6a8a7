#include "dpcalc/distribution.hpp"

#include <cmath>
#include <numbers>

namespace dpcalc {

namespace {
constexpr double kPi = std::numbers::pi;

double checked_positive(const Quantity& q, Dimension dim, const char* what) {
  const double v = q.value_in(dim);
  if (!(v > 0.0)) {
    throw ValueError(std::string(what) + " must be > 0, got " + q.str());
  }
  return v;
}
}  // namespace

const char* shape_name(Shape s) {
  switch (s) {
    case Shape::Point:
      return "point";
    case Shape::UniformSphere:
      return "uniform_sphere";
    case Shape::Gaussian:
      return "gaussian";
  }
  return "?";
}

DistributionModel::DistributionModel(Shape shape, Quantity extent,
                                     Quantity mass,
                                     std::optional<Quantity> charge)
    : shape_(shape),
      extent_(extent),
      total_mass_(mass),
      total_charge_(std::move(charge)) {
  checked_positive(total_mass_, dims::mass, "total_mass");
  if (total_charge_) {
    total_charge_->value_in(dims::charge);
  }
}

DistributionModel DistributionModel::point(Quantity total_mass,
                                           std::optional<Quantity> charge) {
  return {Shape::Point, meters(0.0), total_mass, std::move(charge)};
}

DistributionModel DistributionModel::uniform_sphere(
    Quantity radius, Quantity total_mass, std::optional<Quantity> charge) {
  checked_positive(radius, dims::length, "radius");
  return {Shape::UniformSphere, radius, total_mass, std::move(charge)};
}

DistributionModel DistributionModel::gaussian(Quantity sigma,
                                              Quantity total_mass,
                                              std::optional<Quantity> charge) {
  checked_positive(sigma, dims::length, "sigma");
  return {Shape::Gaussian, sigma, total_mass, std::move(charge)};
}

Quantity density_at(const DistributionModel& model, const Eigen::Vector3d& r) {
  const double m = model.mass_kg();
  const double rn = r.norm();
  switch (model.shape()) {
    case Shape::Point:
      throw UnsupportedShapeError(
          "density_at: point mass has a distributional density");
    case Shape::UniformSphere: {
      const double a = model.extent_m();
      const double rho = rn <= a ? 3.0 * m / (4.0 * kPi * a * a * a) : 0.0;
      return {rho, dims::mass_density};
    }
    case Shape::Gaussian: {
      const double s = model.extent_m();
      const double norm = std::pow(2.0 * kPi * s * s, -1.5);
      return {m * norm * std::exp(-0.5 * rn * rn / (s * s)),
              dims::mass_density};
    }
  }
  throw Error("unreachable");
}

Quantity potential_at(const DistributionModel& model,
                      const Eigen::Vector3d& r) {
  const double G = Constants::codata2018().G.value();
  const double m = model.mass_kg();
  const double rn = r.norm();
  switch (model.shape()) {
    case Shape::Point:
      if (rn == 0.0) {
        throw SingularityError("potential_at: point mass potential at r = 0");
      }
      return {-G * m / rn, dims::specific_energy};
    case Shape::UniformSphere: {
      const double a = model.extent_m();
      const double phi = rn < a ? -G * m * (3.0 * a * a - rn * rn) /
                                      (2.0 * a * a * a)
                                : -G * m / rn;
      return {phi, dims::specific_energy};
    }
    case Shape::Gaussian: {
      const double s = model.extent_m();
      const double x = rn / (s * std::numbers::sqrt2);
      // erf(x)/r is smooth at the origin; switch to its series for tiny x.
      double phi;
      if (x < 1e-6) {
        const double c = std::sqrt(2.0 / kPi) / s;
        phi = -G * m * c * (1.0 - x * x / 3.0);
      } else {
        phi = -G * m * std::erf(x) / rn;
      }
      return {phi, dims::specific_energy};
    }
  }
  throw Error("unreachable");
}

Eigen::Vector3d sample_point(const DistributionModel& model, Rng& rng) {
  switch (model.shape()) {
    case Shape::Point:
      throw UnsupportedShapeError("sample_point: point mass is not samplable");
    case Shape::UniformSphere: {
      const double a = model.extent_m();
      // Uniform direction from cos(theta), phi; radius from the volume CDF.
      const double mu = 2.0 * rng.uniform01() - 1.0;
      const double phi = 2.0 * kPi * rng.uniform01();
      const double rad = a * std::cbrt(rng.uniform01());
      const double st = std::sqrt(1.0 - mu * mu);
      return {rad * st * std::cos(phi), rad * st * std::sin(phi), rad * mu};
    }
    case Shape::Gaussian: {
      const double s = model.extent_m();
      return {s * rng.normal(), s * rng.normal(), s * rng.normal()};
    }
  }
  throw Error("unreachable");
}

std::vector<Eigen::Vector3d> sample_points(const DistributionModel& model,
                                           std::int64_t n,
                                           std::uint64_t seed) {
  if (n <= 0) {
    throw ValueError("sample_points: n must be > 0");
  }
  Rng rng(seed);
  std::vector<Eigen::Vector3d> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    out.push_back(sample_point(model, rng));
  }
  return out;
}

ComponentPlacement::ComponentPlacement(const Eigen::Vector3d& center_m,
                                       std::complex<double> w)
    : center(center_m), weight(w) {
  if (!center.allFinite()) {
    throw ValueError("component center must be finite");
  }
  const double mod = std::abs(w);
  if (!(mod > 0.0) || mod > 1.0 + 1e-12 || !std::isfinite(mod)) {
    throw ValueError("component weight modulus must lie in (0, 1]");
  }
}

ComponentPlacement::ComponentPlacement(const std::array<Quantity, 3>& center_q,
                                       std::complex<double> w)
    : ComponentPlacement(
          Eigen::Vector3d{center_q[0].value_in(dims::length),
                          center_q[1].value_in(dims::length),
                          center_q[2].value_in(dims::length)},
          w) {}

SuperpositionSpec::SuperpositionSpec(DistributionModel base,
                                     std::vector<ComponentPlacement> comps)
    : base_(std::move(base)), components_(std::move(comps)) {
  if (components_.size() < 2) {
    throw ValueError("superposition needs at least 2 components");
  }
  double norm = 0.0;
  for (const auto& c : components_) norm += std::norm(c.weight);
  if (std::abs(norm - 1.0) > 1e-12) {
    throw ValueError("component weights must satisfy sum |w|^2 = 1, got " +
                     std::to_string(norm));
  }
}

SuperpositionSpec SuperpositionSpec::symmetric_pair(DistributionModel base,
                                                    Quantity d) {
  const double sep = d.value_in(dims::length);
  if (sep < 0.0) {
    throw ValueError("separation must be >= 0, got " + d.str());
  }
  const double w = std::numbers::sqrt2 / 2.0;
  std::vector<ComponentPlacement> comps{
      {Eigen::Vector3d{-0.5 * sep, 0.0, 0.0}, {w, 0.0}},
      {Eigen::Vector3d{+0.5 * sep, 0.0, 0.0}, {w, 0.0}},
  };
  return {std::move(base), std::move(comps)};
}

}  // namespace dpcalc
