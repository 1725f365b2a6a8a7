#include "dpcalc/coulomb.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "dpcalc/rng.hpp"

namespace dpcalc {

namespace {

constexpr double kSqrtPi = 1.7724538509055160272981674833411;

// erf(k d)/d, continuous through d = 0 where it tends to 2k/sqrt(pi).
double erf_over_r(double d, double k) {
  const double x = k * d;
  if (x < 1e-6) {
    const double c = 2.0 * k / kSqrtPi;
    return c * (1.0 - x * x / 3.0);
  }
  return std::erf(x) / d;
}

// Unit-mass self integral, energy-normalized: (1/2) \int\int rho rho'/|x-y|.
double unit_self(const DistributionModel& m) {
  switch (m.shape()) {
    case Shape::Point:
      throw SingularityError(
          "coulomb_self: self integral of a point mass diverges");
    case Shape::UniformSphere:
      return 0.6 / m.extent_m();
    case Shape::Gaussian:
      return 1.0 / (2.0 * kSqrtPi * m.extent_m());
  }
  throw Error("unreachable");
}

struct PartialSums {
  double sum = 0.0;
  double sumsq = 0.0;
  std::int64_t n = 0;
  std::int64_t resampled = 0;
};

// Samples either the model density or, for a point, its center offset.
struct Sampler {
  const DistributionModel* model;
  Eigen::Vector3d center;

  Eigen::Vector3d draw(Rng& rng) const {
    if (model->shape() == Shape::Point) return center;
    return center + sample_point(*model, rng);
  }
};

PartialSums kernel_partition(const Sampler& a, const Sampler& b,
                             std::int64_t n, std::uint64_t seed) {
  Rng rng(seed);
  PartialSums out;
  for (std::int64_t i = 0; i < n; ++i) {
    double t = 0.0;
    for (;;) {
      const double r = (a.draw(rng) - b.draw(rng)).norm();
      if (r > 0.0) {
        t = 1.0 / r;
        break;
      }
      ++out.resampled;
    }
    out.sum += t;
    out.sumsq += t * t;
    ++out.n;
  }
  return out;
}

// Runs kMcPartitions equal chunks with derived seeds, optionally across
// threads, and combines partials in fixed partition order.
KernelIntegral run_mc(const Sampler& a, const Sampler& b, double scale,
                      std::int64_t samples, std::uint64_t seed, int workers) {
  if (samples < 1000) {
    throw ValueError("Monte Carlo needs at least 1000 samples, got " +
                     std::to_string(samples));
  }
  const std::int64_t chunk =
      (samples + kMcPartitions - 1) / kMcPartitions;  // round up
  std::array<PartialSums, kMcPartitions> parts;

  int nworkers = workers;
  if (nworkers <= 0) {
    nworkers = static_cast<int>(std::thread::hardware_concurrency());
    if (nworkers <= 0) nworkers = 1;
  }
  nworkers = std::min(nworkers, kMcPartitions);

  auto run_strided = [&](int offset, int stride) {
    for (int k = offset; k < kMcPartitions; k += stride) {
      parts[static_cast<std::size_t>(k)] = kernel_partition(
          a, b, chunk, derive_seed(seed, static_cast<std::uint64_t>(k)));
    }
  };
  if (nworkers == 1) {
    run_strided(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nworkers));
    for (int w = 0; w < nworkers; ++w) {
      pool.emplace_back(run_strided, w, nworkers);
    }
    for (auto& t : pool) t.join();
  }

  double sum = 0.0, sumsq = 0.0;
  std::int64_t n = 0, resampled = 0;
  for (const auto& p : parts) {
    sum += p.sum;
    sumsq += p.sumsq;
    n += p.n;
    resampled += p.resampled;
  }
  const double mean = sum / static_cast<double>(n);
  const double var =
      std::max(0.0, (sumsq - static_cast<double>(n) * mean * mean) /
                        static_cast<double>(n - 1));
  const double sem = std::sqrt(var / static_cast<double>(n));

  KernelIntegral out;
  out.value = {scale * mean, dims::mass_sq_per_length};
  out.method = EvalMethod::MonteCarlo;
  out.std_error = Quantity{scale * sem, dims::mass_sq_per_length};
  out.samples = n;
  out.seed = seed;
  out.resampled = resampled;
  return out;
}

}  // namespace

bool cross_closed_form_available(const DistributionModel& a,
                                 const DistributionModel& b, double d) {
  const Shape sa = a.shape();
  const Shape sb = b.shape();
  if (d == 0.0) {
    // Coincident identical shapes reduce to the (doubled) self integral.
    return a.same_geometry(b) && a.is_extended();
  }
  if (sa == Shape::Gaussian && sb == Shape::Gaussian) return true;
  if (sa == Shape::Point && sb == Shape::Point) return true;
  if ((sa == Shape::Point && sb == Shape::Gaussian) ||
      (sa == Shape::Gaussian && sb == Shape::Point)) {
    return true;
  }
  if (sa == Shape::UniformSphere && sb == Shape::UniformSphere) {
    return d >= a.extent_m() + b.extent_m();  // shell theorem range
  }
  if ((sa == Shape::Point && sb == Shape::UniformSphere) ||
      (sa == Shape::UniformSphere && sb == Shape::Point)) {
    const double radius = std::max(a.extent_m(), b.extent_m());
    return d >= radius;  // exterior only
  }
  return false;  // sphere-Gaussian has no closed form here
}

KernelIntegral coulomb_self(const DistributionModel& model) {
  const double m = model.mass_kg();
  KernelIntegral out;
  out.value = {m * m * unit_self(model), dims::mass_sq_per_length};
  out.method = EvalMethod::ClosedForm;
  return out;
}

KernelIntegral coulomb_cross(const DistributionModel& a,
                             const Eigen::Vector3d& ca,
                             const DistributionModel& b,
                             const Eigen::Vector3d& cb) {
  const double d = (ca - cb).norm();
  const double mm = a.mass_kg() * b.mass_kg();
  const Shape sa = a.shape();
  const Shape sb = b.shape();

  if (d == 0.0) {
    if (sa == Shape::Point && sb == Shape::Point) {
      throw SingularityError("coulomb_cross: point-point at zero separation");
    }
    if (a.same_geometry(b) && a.is_extended()) {
      // I[rho, rho] without the self-pair 1/2: twice the self integral.
      KernelIntegral out;
      out.value = {2.0 * mm * unit_self(a), dims::mass_sq_per_length};
      out.method = EvalMethod::ClosedForm;
      return out;
    }
  }
  if (!cross_closed_form_available(a, b, d)) {
    throw UnsupportedShapeError(
        std::string("coulomb_cross: no closed form for ") + shape_name(sa) +
        "-" + shape_name(sb) + " at separation " + std::to_string(d) + " m");
  }

  double unit;  // cross integral for unit masses
  if (sa == Shape::Gaussian && sb == Shape::Gaussian) {
    const double s2 = a.extent_m() * a.extent_m() + b.extent_m() * b.extent_m();
    unit = erf_over_r(d, 1.0 / std::sqrt(2.0 * s2));
  } else if ((sa == Shape::Point && sb == Shape::Gaussian) ||
             (sa == Shape::Gaussian && sb == Shape::Point)) {
    const double s = std::max(a.extent_m(), b.extent_m());
    unit = erf_over_r(d, 1.0 / (s * std::numbers::sqrt2));
  } else {
    // Point-point, exterior point-sphere, non-overlapping spheres: both act
    // as points at their centers.
    unit = 1.0 / d;
  }

  KernelIntegral out;
  out.value = {mm * unit, dims::mass_sq_per_length};
  out.method = EvalMethod::ClosedForm;
  return out;
}

KernelIntegral coulomb_self_mc(const DistributionModel& model,
                               std::int64_t samples, std::uint64_t seed,
                               int workers) {
  if (!model.is_extended()) {
    throw UnsupportedShapeError(
        "coulomb_self_mc: point mass is not samplable");
  }
  const Sampler s{&model, Eigen::Vector3d::Zero()};
  const double m = model.mass_kg();
  return run_mc(s, s, 0.5 * m * m, samples, seed, workers);
}

KernelIntegral coulomb_cross_mc(const DistributionModel& a,
                                const Eigen::Vector3d& ca,
                                const DistributionModel& b,
                                const Eigen::Vector3d& cb,
                                std::int64_t samples, std::uint64_t seed,
                                int workers) {
  if (!a.is_extended() && !b.is_extended()) {
    throw UnsupportedShapeError(
        "coulomb_cross_mc: point-point pairs have no samplable side");
  }
  const Sampler pa{&a, ca};
  const Sampler pb{&b, cb};
  return run_mc(pa, pb, a.mass_kg() * b.mass_kg(), samples, seed, workers);
}

KernelIntegral coulomb_cross_auto(const DistributionModel& a,
                                  const Eigen::Vector3d& ca,
                                  const DistributionModel& b,
                                  const Eigen::Vector3d& cb,
                                  std::int64_t samples, std::uint64_t seed) {
  const double d = (ca - cb).norm();
  const bool point_point = !a.is_extended() && !b.is_extended();
  if (cross_closed_form_available(a, b, d) || point_point) {
    return coulomb_cross(a, ca, b, cb);  // point-point at d=0 throws here
  }
  KernelIntegral out = coulomb_cross_mc(a, ca, b, cb, samples, seed);
  out.fallback = true;
  return out;
}

}  // namespace dpcalc
