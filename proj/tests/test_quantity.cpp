#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "dpcalc/quantity.hpp"

using namespace dpcalc;

TEST_CASE("quantity construction") {
  const Quantity zero = quantity(0.0, dims::mass);
  CHECK(zero.value() == 0.0);
  CHECK(zero.dim() == dims::mass);

  const Quantity g = quantity(6.674e-11, dims::gravitational);
  CHECK(g.dim() == Dimension{-1, 3, -2, 0});

  CHECK_THROWS_AS(quantity(std::numeric_limits<double>::quiet_NaN(),
                           dims::mass),
                  ValueError);
  CHECK_THROWS_AS(quantity(std::numeric_limits<double>::infinity(),
                           dims::mass),
                  ValueError);
}

TEST_CASE("multiplication follows the unit algebra") {
  const Quantity m = kilograms(2.0);
  const Quantity a = quantity(3.0, dims::acceleration);
  const Quantity f = m * a;
  CHECK(f.dim() == dims::force);
  CHECK(f.value() == doctest::Approx(6.0));

  // G (1 kg)^2 / (1 m) reduces to an energy.
  const Quantity e = Constants::codata2018().G * pow(kilograms(1.0), 2) /
                     meters(1.0);
  CHECK(e.dim() == dims::energy);
  CHECK(e.value() == doctest::Approx(6.67430e-11).epsilon(1e-12));

  const Quantity q = quantity(4.25, dims::charge);
  const Quantity same = q * dimensionless(1.0);
  CHECK(same == q);
}

TEST_CASE("division and power") {
  const Quantity v = meters(10.0) / seconds(4.0);
  CHECK(v.dim() == dims::velocity);
  CHECK(v.value() == doctest::Approx(2.5));

  const Quantity vol = pow(meters(2.0), 3);
  CHECK(vol.dim() == dims::volume);
  CHECK(vol.value() == doctest::Approx(8.0));

  const Quantity inv = pow(seconds(2.0), -1);
  CHECK(inv.dim() == Dimension{0, 0, -1, 0});
  CHECK(inv.value() == doctest::Approx(0.5));

  // Overflow to non-finite is an error, not a silent inf.
  const Quantity big = kilograms(1e308);
  CHECK_THROWS_AS(big * big, ValueError);
  CHECK_THROWS_AS(kilograms(1.0) / dimensionless(0.0), ValueError);
}

TEST_CASE("sqrt checks exponent parity") {
  const Quantity area = quantity(9.0, dims::area);
  CHECK(sqrt(area).dim() == dims::length);
  CHECK(sqrt(area).value() == doctest::Approx(3.0));
  CHECK_THROWS_AS(sqrt(meters(4.0)), DimensionError);
  CHECK_THROWS_AS(sqrt(quantity(-1.0, dims::area)), ValueError);
}

TEST_CASE("convert_to_eV") {
  CHECK(convert_to_eV(joules(1.602176634e-19)) == doctest::Approx(1.0));
  CHECK(convert_to_eV(joules(0.0)) == 0.0);
  CHECK(convert_to_eV(joules(1.1e-33)) ==
        doctest::Approx(6.86565998e-15).epsilon(1e-8));
  CHECK_THROWS_AS(convert_to_eV(kilograms(1.0)), DimensionError);
}

TEST_CASE("constants match CODATA 2018") {
  const auto& k = Constants::codata2018();
  CHECK(k.G.value() == 6.67430e-11);
  CHECK(k.epsilon0.value() == 8.8541878128e-12);
  CHECK(k.elementary_charge.value() == 1.602176634e-19);
  CHECK(k.planck_h.value() == 6.62607015e-34);
  CHECK(k.electronvolt.value() == 1.602176634e-19);
  CHECK(k.coulomb_constant().value() ==
        doctest::Approx(8.9875517923e9).epsilon(1e-9));
  CHECK(k.planck_h.dim() == dims::energy * dims::time);
}

namespace {
Dimension random_dim(std::mt19937_64& gen) {
  std::uniform_int_distribution<int> exp(-3, 3);
  return {exp(gen), exp(gen), exp(gen), exp(gen)};
}
}  // namespace

TEST_CASE("property: commutativity and inverse over random quantities") {
  std::mt19937_64 gen(91);
  std::uniform_real_distribution<double> mag(-6.0, 6.0);
  for (int i = 0; i < 300; ++i) {
    const Quantity a{std::pow(10.0, mag(gen)), random_dim(gen)};
    const Quantity b{std::pow(10.0, mag(gen)), random_dim(gen)};
    const Quantity ab = a * b;
    const Quantity ba = b * a;
    CHECK(ab.value() == ba.value());
    CHECK(ab.dim() == ba.dim());

    const Quantity back = (a * b) / b;
    CHECK(back.dim() == a.dim());
    CHECK(back.value() ==
          doctest::Approx(a.value()).epsilon(1e-14));
  }
}

TEST_CASE("property: mismatched dimensions never add silently") {
  std::mt19937_64 gen(92);
  for (int i = 0; i < 200; ++i) {
    const Dimension da = random_dim(gen);
    Dimension db = random_dim(gen);
    if (da == db) db = db * dims::mass;  // force a mismatch
    const Quantity a{1.0, da};
    const Quantity b{1.0, db};
    CHECK_THROWS_AS(a + b, DimensionError);
    CHECK_THROWS_AS(a - b, DimensionError);
    CHECK_THROWS_AS((void)(a < b), DimensionError);
    // Matching dimensions stay fine.
    CHECK((a + Quantity{2.0, da}).value() == doctest::Approx(3.0));
  }
}
