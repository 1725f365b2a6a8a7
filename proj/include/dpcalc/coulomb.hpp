#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>

#include "dpcalc/distribution.hpp"
#include "dpcalc/quantity.hpp"

namespace dpcalc {

enum class EvalMethod { ClosedForm, MonteCarlo };

/// One evaluation of the Coulomb bilinear integral
///   I[rho_a, rho_b] = \int\int rho_a(x) rho_b(y) / |x - y| d3x d3y
/// in kg^2/m. Self integrals are energy-normalized (halved) so that
/// coupling * value is directly the self-interaction energy of one branch;
/// cross integrals are the full mutual term. Monte Carlo results carry a
/// standard error, closed forms do not.
struct KernelIntegral {
  Quantity value{0.0, dims::mass_sq_per_length};
  EvalMethod method = EvalMethod::ClosedForm;
  std::optional<Quantity> std_error;
  std::optional<std::int64_t> samples;
  std::optional<std::uint64_t> seed;
  // Pairs rejected because |x - y| == 0 and redrawn. Nonzero counts flag an
  // RNG defect; the probability of a coincidence is zero for these densities.
  std::int64_t resampled = 0;
  // Set when a closed form was requested but unavailable and the evaluation
  // fell back to Monte Carlo.
  bool fallback = false;
};

/// Number of Monte Carlo partitions. Fixed (never derived from the worker
/// count) so that estimates are bit-identical however the work is spread.
inline constexpr int kMcPartitions = 64;

/// True when coulomb_cross has a closed form for this pair at separation d.
bool cross_closed_form_available(const DistributionModel& a,
                                 const DistributionModel& b, double d_m);

/// Closed-form self integral (1/2) I[rho, rho]:
///   uniform sphere  (3/5) m^2 / a
///   Gaussian        m^2 / (2 sqrt(pi) sigma)
/// Point masses have a divergent self integral and are rejected.
KernelIntegral coulomb_self(const DistributionModel& model);

/// Closed-form cross integral I[rho_a, rho_b] between distributions centered
/// at ca and cb (metres):
///   point-point (d > 0), point-sphere (exterior), non-overlapping spheres:
///       m_a m_b / d
///   Gaussian-Gaussian (any d):
///       m_a m_b erf(d / sqrt(2 (sa^2 + sb^2))) / d
///   point-Gaussian (any d):  m_a m_b erf(d / (s sqrt 2)) / d
///   identical coincident shapes (d = 0): twice the self integral.
/// Unsupported pairs (overlapping spheres, sphere-Gaussian) throw
/// UnsupportedShapeError; callers that want the automatic Monte Carlo
/// fallback use coulomb_cross_auto.
KernelIntegral coulomb_cross(const DistributionModel& a,
                             const Eigen::Vector3d& ca,
                             const DistributionModel& b,
                             const Eigen::Vector3d& cb);

/// Monte Carlo estimate of the self integral: (1/2) m^2 E[1/|x - y|] over
/// independent pairs drawn from the normalized density. Deterministic for a
/// fixed seed; workers = 0 picks a hardware-based thread count (the estimate
/// does not depend on it).
KernelIntegral coulomb_self_mc(const DistributionModel& model,
                               std::int64_t samples, std::uint64_t seed,
                               int workers = 0);

/// Monte Carlo estimate of the cross integral: m_a m_b E[1/|x - y|] with
/// x ~ rho_a/m_a, y ~ rho_b/m_b. A point distribution is admitted on one
/// side (the estimator integrates over the extended side only); point-point
/// pairs are rejected.
KernelIntegral coulomb_cross_mc(const DistributionModel& a,
                                const Eigen::Vector3d& ca,
                                const DistributionModel& b,
                                const Eigen::Vector3d& cb,
                                std::int64_t samples, std::uint64_t seed,
                                int workers = 0);

/// Closed form when available, otherwise Monte Carlo with `fallback` set.
KernelIntegral coulomb_cross_auto(const DistributionModel& a,
                                  const Eigen::Vector3d& ca,
                                  const DistributionModel& b,
                                  const Eigen::Vector3d& cb,
                                  std::int64_t samples, std::uint64_t seed);

}  // namespace dpcalc
