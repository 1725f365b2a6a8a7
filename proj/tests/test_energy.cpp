#include <doctest.h>

#include <cmath>
#include <random>

#include "dpcalc/energy.hpp"

using namespace dpcalc;

namespace {
constexpr double kG = 6.67430e-11;
constexpr double kKe = 8987551792.2611722;  // 1/(4 pi eps0), CODATA 2018
const Quantity kElementaryCharge = coulombs(1.602176634e-19);

EnergyOptions full_mass() {
  EnergyOptions opt;
  opt.weighting = Weighting::FullMass;
  return opt;
}
}  // namespace

TEST_CASE("delta_e for separated equal uniform spheres") {
  const double a = 1.0, m = 2.0;
  const auto base = DistributionModel::uniform_sphere(meters(a), kilograms(m));

  SUBCASE("closed form value and breakdown") {
    const double d = 5.0;
    const DeltaE de = delta_e(
        SuperpositionSpec::symmetric_pair(base, meters(d)),
        Interaction::Gravity, full_mass());
    CHECK(de.method == EvalMethod::ClosedForm);
    CHECK(!de.quasi_localized);
    // (coupling) [ 2 (3/5) m^2/a - m^2/d ]
    const double expected = kG * (1.2 * m * m / a - m * m / d);
    CHECK(de.value.value_in(dims::energy) ==
          doctest::Approx(expected).epsilon(1e-14));
    CHECK(de.self_1.value() == doctest::Approx(0.6 * m * m / a).epsilon(1e-14));
    CHECK(de.self_2.value() == doctest::Approx(0.6 * m * m / a).epsilon(1e-14));
    CHECK(de.cross.value() == doctest::Approx(m * m / d).epsilon(1e-14));
    CHECK(de.value.value() ==
          doctest::Approx(kG * (de.self_1.value() + de.self_2.value() -
                                de.cross.value()))
              .epsilon(1e-14));
  }

  SUBCASE("d -> infinity limit is twice the branch self energy") {
    const DeltaE de = delta_e(
        SuperpositionSpec::symmetric_pair(base, meters(1e12)),
        Interaction::Gravity, full_mass());
    CHECK(de.value.value() ==
          doctest::Approx(1.2 * kG * m * m / a).epsilon(1e-10));
  }

  SUBCASE("coincident branches cost nothing") {
    const DeltaE de = delta_e(
        SuperpositionSpec::symmetric_pair(base, meters(0.0)),
        Interaction::Gravity, full_mass());
    CHECK(de.value.value() == 0.0);
    CHECK(de.method == EvalMethod::ClosedForm);
  }

  SUBCASE("overlap falls back to Monte Carlo with a flag") {
    EnergyOptions opt = full_mass();
    opt.mc_samples = 50000;
    const DeltaE de =
        delta_e(SuperpositionSpec::symmetric_pair(base, meters(1.0)),
                Interaction::Gravity, opt);
    CHECK(de.method == EvalMethod::MonteCarlo);
    CHECK(de.mc_fallback);
    CHECK(de.std_error.has_value());
    CHECK(de.value.value() > 0.0);
  }

  SUBCASE("born weighting quarters the full-mass value") {
    const auto spec = SuperpositionSpec::symmetric_pair(base, meters(5.0));
    const DeltaE full = delta_e(spec, Interaction::Gravity, full_mass());
    const DeltaE born = delta_e(spec, Interaction::Gravity, {});
    CHECK(born.value.value() ==
          doctest::Approx(full.value.value() / 4.0).epsilon(1e-13));
  }

  SUBCASE("convention factor scales linearly") {
    const auto spec = SuperpositionSpec::symmetric_pair(base, meters(5.0));
    EnergyOptions opt = full_mass();
    opt.convention_factor = 4.0 * M_PI;
    CHECK(delta_e(spec, Interaction::Gravity, opt).value.value() ==
          doctest::Approx(4.0 * M_PI *
                          delta_e(spec, Interaction::Gravity, full_mass())
                              .value.value())
              .epsilon(1e-14));
  }
}

TEST_CASE("delta_e for point branches is the quasi-localized estimate") {
  const auto ion =
      DistributionModel::point(kilograms(1e-23), kElementaryCharge);
  const auto spec = SuperpositionSpec::symmetric_pair(ion, meters(1e-7));

  const DeltaE grav = delta_e(spec, Interaction::Gravity, full_mass());
  CHECK(grav.quasi_localized);
  CHECK(grav.value.value() == doctest::Approx(6.6743e-50).epsilon(1e-9));
  CHECK(grav.self_1.value() == 0.0);
  CHECK(grav.cross.value() == doctest::Approx(1e-46 / 1e-7).epsilon(1e-12));

  const DeltaE em = delta_e(spec, Interaction::Electromagnetic, full_mass());
  CHECK(em.value.value() ==
        doctest::Approx(kKe * 1.602176634e-19 * 1.602176634e-19 / 1e-7)
            .epsilon(1e-12));

  CHECK_THROWS_AS(
      delta_e(SuperpositionSpec::symmetric_pair(ion, meters(0.0)),
              Interaction::Gravity, full_mass()),
      SingularityError);
}

TEST_CASE("delta_e preconditions") {
  const auto base = DistributionModel::gaussian(meters(1.0), kilograms(1.0));
  const auto spec = SuperpositionSpec::symmetric_pair(base, meters(1.0));

  // EM without charge.
  CHECK_THROWS_AS(delta_e(spec, Interaction::Electromagnetic, full_mass()),
                  ValueError);

  // Three components are out of scope for the two-branch functional.
  const double w = 1.0 / std::sqrt(3.0);
  const SuperpositionSpec three(
      base, {{Eigen::Vector3d{0, 0, 0}, {w, 0}},
             {Eigen::Vector3d{1, 0, 0}, {w, 0}},
             {Eigen::Vector3d{2, 0, 0}, {w, 0}}});
  CHECK_THROWS_AS(delta_e(three, Interaction::Gravity, full_mass()),
                  ValueError);

  EnergyOptions bad = full_mass();
  bad.convention_factor = -1.0;
  CHECK_THROWS_AS(delta_e(spec, Interaction::Gravity, bad), ValueError);
}

TEST_CASE("em_gravity_ratio") {
  SUBCASE("trapped-ion constants") {
    const auto ion =
        DistributionModel::point(kilograms(1e-23), kElementaryCharge);
    const auto spec = SuperpositionSpec::symmetric_pair(ion, meters(1e-7));
    const double r = em_gravity_ratio(spec, full_mass());
    CHECK(r == doctest::Approx(3.4566e28).epsilon(1e-4));
    // Doubling the separation leaves the ratio untouched.
    const auto far = SuperpositionSpec::symmetric_pair(ion, meters(2e-7));
    CHECK(em_gravity_ratio(far, full_mass()) == r);
  }

  SUBCASE("zero charge gives zero ratio") {
    const auto neutral =
        DistributionModel::point(kilograms(1e-23), coulombs(0.0));
    const auto spec = SuperpositionSpec::symmetric_pair(neutral, meters(1e-7));
    CHECK(em_gravity_ratio(spec, full_mass()) == 0.0);
    const auto uncharged = DistributionModel::point(kilograms(1e-23));
    CHECK_THROWS_AS(
        em_gravity_ratio(SuperpositionSpec::symmetric_pair(uncharged,
                                                           meters(1e-7)),
                         full_mass()),
        ValueError);
  }

  SUBCASE("quotient route agrees for extended shapes, both weightings") {
    std::mt19937_64 gen(5150);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 10; ++i) {
      const double sigma = 0.1 + u(gen);
      const double m = 1e-20 * (0.5 + u(gen));
      const double q = 1.602176634e-19 * (0.2 + u(gen));
      const double d = 3.0 * u(gen);
      const auto base = DistributionModel::gaussian(
          meters(sigma), kilograms(m), coulombs(q));
      const auto spec = SuperpositionSpec::symmetric_pair(base, meters(d));
      EnergyOptions opt;
      opt.weighting = i % 2 ? Weighting::Born : Weighting::FullMass;
      const double ratio = em_gravity_ratio(spec, opt);
      CHECK(ratio == doctest::Approx(kKe * q * q / (kG * m * m)).epsilon(1e-12));
    }
  }
}

TEST_CASE("mutual_force reproduces the trapped-ion numbers") {
  const auto ion =
      DistributionModel::point(kilograms(1e-23), kElementaryCharge);
  const ForceEstimate fg = mutual_force(ion, meters(1e-7), Interaction::Gravity);
  CHECK(fg.value.value_in(dims::force) ==
        doctest::Approx(6.6743e-43).epsilon(1e-12));
  CHECK(!fg.point_approx_warning);

  const ForceEstimate fe =
      mutual_force(ion, meters(1e-7), Interaction::Electromagnetic);
  CHECK(fe.value.value() == doctest::Approx(2.3070776e-14).epsilon(1e-7));
  CHECK((fe.value / ion.total_mass()).value_in(dims::acceleration) ==
        doctest::Approx(2.3070776e9).epsilon(1e-7));

  CHECK_THROWS_AS(mutual_force(ion, meters(0.0), Interaction::Gravity),
                  SingularityError);
  CHECK_THROWS_AS(mutual_force(DistributionModel::point(kilograms(1.0)),
                               meters(1.0), Interaction::Electromagnetic),
                  ValueError);

  // Separation below the distribution size flags the point approximation.
  const auto wide = DistributionModel::gaussian(meters(2.0), kilograms(1.0));
  CHECK(mutual_force(wide, meters(1.0), Interaction::Gravity)
            .point_approx_warning);
}

TEST_CASE("property: positivity, scaling laws, monotonicity") {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  SUBCASE("delta_e is nonnegative over random specs") {
    for (int i = 0; i < 40; ++i) {
      const double extent = 0.1 + 2.0 * u(gen);
      const double m = 0.1 + 5.0 * u(gen);
      const double d = 4.0 * u(gen);
      const auto base =
          i % 2 ? DistributionModel::gaussian(meters(extent), kilograms(m))
                : DistributionModel::uniform_sphere(meters(extent),
                                                    kilograms(m));
      EnergyOptions opt;
      opt.weighting = i % 3 ? Weighting::Born : Weighting::FullMass;
      opt.mc_samples = 20000;
      opt.seed = 100 + static_cast<std::uint64_t>(i);
      const DeltaE de = delta_e(SuperpositionSpec::symmetric_pair(
                                    base, meters(d)),
                                Interaction::Gravity, opt);
      CHECK(de.value.value() >= 0.0);
    }
  }

  SUBCASE("mass-squared scaling, exact on the closed form") {
    const double d = 3.0, a = 0.5;
    for (int i = 0; i < 20; ++i) {
      const double m = 0.2 + 5.0 * u(gen);
      const double scale = 0.5 + 3.0 * u(gen);
      const auto base1 =
          DistributionModel::uniform_sphere(meters(a), kilograms(m));
      const auto base2 = DistributionModel::uniform_sphere(
          meters(a), kilograms(scale * m));
      const double e1 = delta_e(SuperpositionSpec::symmetric_pair(
                                    base1, meters(d)),
                                Interaction::Gravity, full_mass())
                            .value.value();
      const double e2 = delta_e(SuperpositionSpec::symmetric_pair(
                                    base2, meters(d)),
                                Interaction::Gravity, full_mass())
                            .value.value();
      CHECK(std::abs(e2 / e1 - scale * scale) < 1e-12 * scale * scale);
    }
  }

  SUBCASE("uniform dilation scales energies by 1/lambda") {
    for (int i = 0; i < 20; ++i) {
      const double lambda = 0.1 + 9.9 * u(gen);
      const double sigma = 0.2 + u(gen);
      const double d = 3.0 * u(gen) + 0.1;
      const auto base =
          DistributionModel::gaussian(meters(sigma), kilograms(1.7));
      const auto dilated = DistributionModel::gaussian(
          meters(lambda * sigma), kilograms(1.7));
      const double e = delta_e(SuperpositionSpec::symmetric_pair(
                                   base, meters(d)),
                               Interaction::Gravity, full_mass())
                           .value.value();
      const double e_dilated =
          delta_e(SuperpositionSpec::symmetric_pair(dilated,
                                                    meters(lambda * d)),
                  Interaction::Gravity, full_mass())
              .value.value();
      CHECK(std::abs(e_dilated - e / lambda) < 1e-12 * std::abs(e / lambda));
    }
  }

  SUBCASE("separation monotonicity for equal spheres (closed-form range)") {
    const auto base =
        DistributionModel::uniform_sphere(meters(1.0), kilograms(1.0));
    double prev = -1.0;
    for (double d = 2.0; d <= 10.0; d += 0.5) {
      const double e = delta_e(SuperpositionSpec::symmetric_pair(
                                   base, meters(d)),
                               Interaction::Gravity, full_mass())
                           .value.value();
      CHECK(e >= prev);
      prev = e;
    }
  }
}
