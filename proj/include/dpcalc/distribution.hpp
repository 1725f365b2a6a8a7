#pragma once

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "dpcalc/quantity.hpp"
#include "dpcalc/rng.hpp"

namespace dpcalc {

enum class Shape { Point, UniformSphere, Gaussian };

const char* shape_name(Shape s);

/// Parametric mass density of one localized wavefunction branch: a point
/// mass, a uniform ball of radius a, or an isotropic Gaussian of width sigma.
/// An optional total charge rides on the same geometry, rescaled by
/// charge/mass, so electromagnetic analogs see identical shapes by
/// construction.
class DistributionModel {
 public:
  static DistributionModel point(Quantity total_mass,
                                 std::optional<Quantity> total_charge = {});
  static DistributionModel uniform_sphere(
      Quantity radius, Quantity total_mass,
      std::optional<Quantity> total_charge = {});
  static DistributionModel gaussian(Quantity sigma, Quantity total_mass,
                                    std::optional<Quantity> total_charge = {});

  Shape shape() const { return shape_; }
  Quantity total_mass() const { return total_mass_; }
  const std::optional<Quantity>& total_charge() const { return total_charge_; }

  /// Radius for a sphere, sigma for a Gaussian, zero length for a point.
  Quantity extent() const { return extent_; }
  double extent_m() const { return extent_.value(); }
  double mass_kg() const { return total_mass_.value(); }
  bool is_extended() const { return shape_ != Shape::Point; }

  bool same_geometry(const DistributionModel& other) const {
    return shape_ == other.shape_ && extent_m() == other.extent_m();
  }

 private:
  DistributionModel(Shape shape, Quantity extent, Quantity mass,
                    std::optional<Quantity> charge);

  Shape shape_;
  Quantity extent_;
  Quantity total_mass_;
  std::optional<Quantity> total_charge_;
};

/// Mass density at a position (coordinates in metres). Point shapes have a
/// distributional density and reject this operation.
Quantity density_at(const DistributionModel& model, const Eigen::Vector3d& r);

/// Gravitational potential of the full-mass distribution at a position
/// (coordinates in metres, result J/kg):
///   point / sphere exterior   -G m / r
///   sphere interior           -G m (3a^2 - r^2) / (2 a^3)
///   Gaussian                  -G m erf(r / (sigma sqrt 2)) / r,
///                             with limit -G m sqrt(2/pi) / sigma at r -> 0.
Quantity potential_at(const DistributionModel& model, const Eigen::Vector3d& r);

/// Draw one point of the normalized density (metres, centered at origin).
Eigen::Vector3d sample_point(const DistributionModel& model, Rng& rng);

/// n i.i.d. samples from the normalized density; identical output for
/// identical seeds. Point shapes are rejected.
std::vector<Eigen::Vector3d> sample_points(const DistributionModel& model,
                                           std::int64_t n, std::uint64_t seed);

/// One branch of a superposition: the shared base density translated to
/// `center` and carrying a complex amplitude.
struct ComponentPlacement {
  ComponentPlacement(const Eigen::Vector3d& center_m,
                     std::complex<double> weight);
  ComponentPlacement(const std::array<Quantity, 3>& center,
                     std::complex<double> weight);

  Eigen::Vector3d center;  // metres
  std::complex<double> weight;
};

/// A single particle in an N-branch spatial superposition: one base density
/// and N weighted placements. Amplitudes must satisfy sum |w|^2 = 1 (to
/// 1e-12); zero separations are allowed (coincident limit).
class SuperpositionSpec {
 public:
  SuperpositionSpec(DistributionModel base,
                    std::vector<ComponentPlacement> components);

  /// Two equal-amplitude branches separated by `d` along the x axis.
  static SuperpositionSpec symmetric_pair(DistributionModel base, Quantity d);

  const DistributionModel& base() const { return base_; }
  const std::vector<ComponentPlacement>& components() const {
    return components_;
  }
  std::size_t size() const { return components_.size(); }

 private:
  DistributionModel base_;
  std::vector<ComponentPlacement> components_;
};

}  // namespace dpcalc
