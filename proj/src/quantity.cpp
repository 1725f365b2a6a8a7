#include "dpcalc/quantity.hpp"

#include <cstdio>
#include <numbers>

namespace dpcalc {

std::string Dimension::str() const {
  static constexpr const char* names[4] = {"kg", "m", "s", "A"};
  std::string out;
  for (int i = 0; i < 4; ++i) {
    if (exp_[i] == 0) continue;
    if (!out.empty()) out += ' ';
    out += names[i];
    if (exp_[i] != 1) out += '^' + std::to_string(exp_[i]);
  }
  return out.empty() ? "1" : out;
}

std::string Quantity::str() const {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", value_);
  std::string out = buf;
  if (!dim_.dimensionless()) out += ' ' + dim_.str();
  return out;
}

Quantity pow(const Quantity& q, int k) {
  return {std::pow(q.value(), k), q.dim().pow(k)};
}

Quantity sqrt(const Quantity& q) {
  const Dimension d = q.dim();
  if (d.mass() % 2 || d.length() % 2 || d.time() % 2 || d.current() % 2) {
    throw DimensionError("sqrt of [" + d.str() +
                         "] has non-integer dimension exponents");
  }
  if (q.value() < 0.0) {
    throw ValueError("sqrt of negative quantity " + q.str());
  }
  return {std::sqrt(q.value()),
          Dimension{d.mass() / 2, d.length() / 2, d.time() / 2,
                    d.current() / 2}};
}

double convert_to_eV(const Quantity& energy) {
  const double joulesv = energy.value_in(dims::energy);
  return joulesv / Constants::codata2018().electronvolt.value();
}

const Constants& Constants::codata2018() {
  static const Constants c{
      .G = {6.67430e-11, dims::gravitational},
      .epsilon0 = {8.8541878128e-12, Dimension{-1, -3, 4, 2}},
      .elementary_charge = {1.602176634e-19, dims::charge},
      .planck_h = {6.62607015e-34, dims::energy * dims::time},
      .electronvolt = {1.602176634e-19, dims::energy},
  };
  return c;
}

Quantity Constants::coulomb_constant() const {
  return dimensionless(1.0) / (4.0 * std::numbers::pi * epsilon0);
}

}  // namespace dpcalc
