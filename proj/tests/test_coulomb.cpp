#include <doctest.h>

#include <cmath>
#include <random>

#include "dpcalc/coulomb.hpp"
#include "support/test_oracles.hpp"

using namespace dpcalc;

namespace {
const Eigen::Vector3d kOrigin{0, 0, 0};
Eigen::Vector3d along_x(double d) { return {d, 0, 0}; }

double mc_gap_sigmas(const KernelIntegral& mc, double expected) {
  return std::abs(mc.value.value() - expected) / mc.std_error->value();
}
}  // namespace

TEST_CASE("closed-form self integrals") {
  const auto sphere =
      DistributionModel::uniform_sphere(meters(1.0), kilograms(1.0));
  const KernelIntegral s = coulomb_self(sphere);
  CHECK(s.method == EvalMethod::ClosedForm);
  CHECK(!s.std_error.has_value());
  CHECK(s.value.value_in(dims::mass_sq_per_length) ==
        doctest::Approx(0.6).epsilon(1e-14));

  // Scaling: m^2 / a.
  const auto sphere2 =
      DistributionModel::uniform_sphere(meters(0.25), kilograms(3.0));
  CHECK(coulomb_self(sphere2).value.value() ==
        doctest::Approx(0.6 * 9.0 / 0.25).epsilon(1e-14));

  const auto gauss = DistributionModel::gaussian(meters(2.0), kilograms(5.0));
  CHECK(coulomb_self(gauss).value.value() ==
        doctest::Approx(25.0 / (2.0 * std::sqrt(M_PI) * 2.0)).epsilon(1e-14));

  CHECK_THROWS_AS(coulomb_self(DistributionModel::point(kilograms(1.0))),
                  SingularityError);
}

TEST_CASE("closed-form cross integrals") {
  const auto pt1 = DistributionModel::point(kilograms(1.0));

  SUBCASE("point-point is the 1/d law") {
    const KernelIntegral c = coulomb_cross(pt1, kOrigin, pt1, along_x(2.0));
    CHECK(c.value.value() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(coulomb_cross(pt1, kOrigin, pt1, kOrigin),
                    SingularityError);
  }

  SUBCASE("non-overlapping spheres act as points") {
    const auto a = DistributionModel::uniform_sphere(meters(1.0), kilograms(2.0));
    const auto b = DistributionModel::uniform_sphere(meters(0.5), kilograms(3.0));
    CHECK(coulomb_cross(a, kOrigin, b, along_x(1.5)).value.value() ==
          doctest::Approx(6.0 / 1.5).epsilon(1e-14));  // touching is exact
    CHECK(coulomb_cross(a, kOrigin, b, along_x(4.0)).value.value() ==
          doctest::Approx(1.5).epsilon(1e-14));
    CHECK_THROWS_AS(coulomb_cross(a, kOrigin, b, along_x(1.0)),
                    UnsupportedShapeError);
  }

  SUBCASE("gaussian-gaussian erf law") {
    const auto g = DistributionModel::gaussian(meters(1.0), kilograms(1.0));
    const KernelIntegral c = coulomb_cross(g, kOrigin, g, along_x(1.0));
    CHECK(c.value.value() ==
          doctest::Approx(0.52049987781304654).epsilon(1e-14));
    // d = 0 reduces to the full self integral 1/(sigma sqrt(pi)).
    const KernelIntegral c0 = coulomb_cross(g, kOrigin, g, kOrigin);
    CHECK(c0.value.value() ==
          doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-14));
    CHECK(c0.value.value() ==
          doctest::Approx(2.0 * coulomb_self(g).value.value()).epsilon(1e-14));
  }

  SUBCASE("point-gaussian and point-sphere") {
    const auto g = DistributionModel::gaussian(meters(0.5), kilograms(2.0));
    CHECK(coulomb_cross(pt1, kOrigin, g, along_x(1.0)).value.value() ==
          doctest::Approx(2.0 * std::erf(1.0 / (0.5 * std::sqrt(2.0))) / 1.0)
              .epsilon(1e-14));
    const auto s = DistributionModel::uniform_sphere(meters(1.0), kilograms(2.0));
    CHECK(coulomb_cross(pt1, kOrigin, s, along_x(3.0)).value.value() ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    // Interior point has no closed form here.
    CHECK_THROWS_AS(coulomb_cross(pt1, kOrigin, s, along_x(0.5)),
                    UnsupportedShapeError);
  }

  SUBCASE("sphere-gaussian has no closed form") {
    const auto s = DistributionModel::uniform_sphere(meters(1.0), kilograms(1.0));
    const auto g = DistributionModel::gaussian(meters(1.0), kilograms(1.0));
    CHECK_THROWS_AS(coulomb_cross(s, kOrigin, g, along_x(5.0)),
                    UnsupportedShapeError);
  }

  SUBCASE("symmetry is exact") {
    const auto g1 = DistributionModel::gaussian(meters(0.8), kilograms(2.0));
    const auto g2 = DistributionModel::gaussian(meters(1.3), kilograms(0.7));
    const Eigen::Vector3d c{0.3, -1.2, 0.9};
    CHECK(coulomb_cross(g1, kOrigin, g2, c).value.value() ==
          coulomb_cross(g2, c, g1, kOrigin).value.value());
  }
}

TEST_CASE("Monte Carlo estimator") {
  const auto sphere =
      DistributionModel::uniform_sphere(meters(1.0), kilograms(1.0));
  const auto gauss = DistributionModel::gaussian(meters(1.0), kilograms(1.0));

  SUBCASE("deterministic per seed and per worker count") {
    const KernelIntegral a = coulomb_self_mc(sphere, 50000, 77);
    const KernelIntegral b = coulomb_self_mc(sphere, 50000, 77);
    CHECK(a.value.value() == b.value.value());
    CHECK(a.std_error->value() == b.std_error->value());
    const KernelIntegral c1 = coulomb_self_mc(sphere, 50000, 77, 1);
    const KernelIntegral c4 = coulomb_self_mc(sphere, 50000, 77, 4);
    CHECK(c1.value.value() == c4.value.value());
    const KernelIntegral other = coulomb_self_mc(sphere, 50000, 78);
    CHECK(a.value.value() != other.value.value());
  }

  SUBCASE("sphere self matches the 3/5 law") {
    const KernelIntegral mc = coulomb_self_mc(sphere, 200000, 5);
    CHECK(mc.method == EvalMethod::MonteCarlo);
    CHECK(mc.samples.value() >= 200000);
    CHECK(mc.resampled == 0);
    CHECK(mc_gap_sigmas(mc, 0.6) < 3.0);
  }

  SUBCASE("gaussian cross matches erf law") {
    const KernelIntegral mc =
        coulomb_cross_mc(gauss, kOrigin, gauss, along_x(1.0), 200000, 6);
    CHECK(mc_gap_sigmas(mc, 0.52049987781304654) < 3.0);
  }

  SUBCASE("point on one side integrates the extended side") {
    const auto pt = DistributionModel::point(kilograms(2.0));
    const KernelIntegral mc =
        coulomb_cross_mc(pt, kOrigin, gauss, along_x(2.0), 200000, 7);
    const double expected = 2.0 * std::erf(2.0 / std::sqrt(2.0)) / 2.0;
    CHECK(mc_gap_sigmas(mc, expected) < 3.0);
    CHECK_THROWS_AS(coulomb_cross_mc(pt, kOrigin, pt, along_x(1.0), 10000, 8),
                    UnsupportedShapeError);
  }

  SUBCASE("overlapping spheres agree with the overlap polynomial") {
    const double s = 1.0;  // half-overlapped equal unit spheres
    const KernelIntegral mc =
        coulomb_cross_mc(sphere, kOrigin, sphere, along_x(s), 400000, 9);
    const double expected = test_oracles::overlap_spheres_mutual(s, 1.0);
    CHECK(expected == doctest::Approx(141.0 / 160.0).epsilon(1e-15));
    CHECK(mc_gap_sigmas(mc, expected) < 3.0);
  }

  SUBCASE("sample floor") {
    CHECK_THROWS_AS(coulomb_self_mc(sphere, 500, 1), ValueError);
  }
}

TEST_CASE("automatic fallback") {
  const auto sphere =
      DistributionModel::uniform_sphere(meters(1.0), kilograms(1.0));
  // Overlapping: falls back to Monte Carlo and flags it.
  const KernelIntegral k =
      coulomb_cross_auto(sphere, kOrigin, sphere, along_x(1.0), 50000, 3);
  CHECK(k.method == EvalMethod::MonteCarlo);
  CHECK(k.fallback);
  // Separated: closed form, no flag.
  const KernelIntegral c =
      coulomb_cross_auto(sphere, kOrigin, sphere, along_x(3.0), 50000, 3);
  CHECK(c.method == EvalMethod::ClosedForm);
  CHECK(!c.fallback);
  // Coincident identical spheres short-circuit to twice the self integral.
  const KernelIntegral z =
      coulomb_cross_auto(sphere, kOrigin, sphere, kOrigin, 50000, 3);
  CHECK(z.method == EvalMethod::ClosedForm);
  CHECK(z.value.value() == doctest::Approx(1.2).epsilon(1e-14));
}

TEST_CASE("property: Monte Carlo vs closed forms over random geometries") {
  std::mt19937_64 gen(1234);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const double sa = 0.2 + 2.0 * u(gen);
    const double sb = 0.2 + 2.0 * u(gen);
    const double ma = 0.5 + 4.0 * u(gen);
    const double mb = 0.5 + 4.0 * u(gen);
    const double d = 3.0 * u(gen);
    const auto ga = DistributionModel::gaussian(meters(sa), kilograms(ma));
    const auto gb = DistributionModel::gaussian(meters(sb), kilograms(mb));
    const KernelIntegral closed = coulomb_cross(ga, kOrigin, gb, along_x(d));
    const KernelIntegral mc = coulomb_cross_mc(ga, kOrigin, gb, along_x(d),
                                               100000, 1000 + i);
    CHECK(mc_gap_sigmas(mc, closed.value.value()) < 4.0);
  }
}
