#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dpcalc {

// Error hierarchy. The CLI maps ConfigError to exit code 2 and every other
// dpcalc::Error to exit code 3.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionError : Error {
  using Error::Error;
};
struct ValueError : Error {
  using Error::Error;
};
struct SingularityError : Error {
  using Error::Error;
};
struct UnsupportedShapeError : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};

/// Integer exponents over the SI base dimensions used in this project:
/// mass (kg), length (m), time (s), electric current (A).
class Dimension {
 public:
  constexpr Dimension() = default;
  constexpr Dimension(int mass, int length, int time, int current)
      : exp_{mass, length, time, current} {}

  constexpr int mass() const { return exp_[0]; }
  constexpr int length() const { return exp_[1]; }
  constexpr int time() const { return exp_[2]; }
  constexpr int current() const { return exp_[3]; }

  constexpr bool operator==(const Dimension&) const = default;

  friend constexpr Dimension operator*(Dimension a, Dimension b) {
    return {a.exp_[0] + b.exp_[0], a.exp_[1] + b.exp_[1], a.exp_[2] + b.exp_[2],
            a.exp_[3] + b.exp_[3]};
  }
  friend constexpr Dimension operator/(Dimension a, Dimension b) {
    return {a.exp_[0] - b.exp_[0], a.exp_[1] - b.exp_[1], a.exp_[2] - b.exp_[2],
            a.exp_[3] - b.exp_[3]};
  }
  constexpr Dimension pow(int k) const {
    return {exp_[0] * k, exp_[1] * k, exp_[2] * k, exp_[3] * k};
  }

  bool dimensionless() const { return *this == Dimension{}; }

  // Canonical unit string, e.g. "kg^2 m^-1" ("1" for dimensionless).
  std::string str() const;

 private:
  std::array<int, 4> exp_{0, 0, 0, 0};
};

namespace dims {
inline constexpr Dimension none{};
inline constexpr Dimension mass{1, 0, 0, 0};
inline constexpr Dimension length{0, 1, 0, 0};
inline constexpr Dimension time{0, 0, 1, 0};
inline constexpr Dimension current{0, 0, 0, 1};
inline constexpr Dimension area{0, 2, 0, 0};
inline constexpr Dimension volume{0, 3, 0, 0};
inline constexpr Dimension velocity{0, 1, -1, 0};
inline constexpr Dimension acceleration{0, 1, -2, 0};
inline constexpr Dimension force{1, 1, -2, 0};
inline constexpr Dimension energy{1, 2, -2, 0};
inline constexpr Dimension charge{0, 0, 1, 1};
inline constexpr Dimension mass_density{1, -3, 0, 0};
inline constexpr Dimension specific_energy{0, 2, -2, 0};  // J/kg
inline constexpr Dimension gravitational{-1, 3, -2, 0};   // units of G
// Kernel integrals carry mass^2/length (gravity) or charge^2/length (EM).
inline constexpr Dimension mass_sq_per_length{2, -1, 0, 0};
inline constexpr Dimension charge_sq_per_length{0, -1, 2, 2};
}  // namespace dims

/// A finite real value tagged with its SI dimension. Dimensions are carried
/// at runtime so that config-driven inputs can be checked, not just typed
/// constants. No operation lets a NaN or infinity through silently.
class Quantity {
 public:
  Quantity() : value_(0.0), dim_{} {}
  Quantity(double value, Dimension dim) : value_(value), dim_(dim) {
    if (!std::isfinite(value)) {
      throw ValueError("quantity value must be finite, got " +
                       std::to_string(value) + " [" + dim.str() + "]");
    }
  }

  double value() const { return value_; }
  Dimension dim() const { return dim_; }

  /// Value after checking the dimension matches; the only sanctioned way to
  /// unwrap a Quantity when a specific unit is expected.
  double value_in(Dimension expected) const {
    if (dim_ != expected) {
      throw DimensionError("expected dimension [" + expected.str() +
                           "], got [" + dim_.str() + "]");
    }
    return value_;
  }

  std::string str() const;

  friend Quantity operator+(const Quantity& a, const Quantity& b) {
    require_same(a, b, "add");
    return {a.value_ + b.value_, a.dim_};
  }
  friend Quantity operator-(const Quantity& a, const Quantity& b) {
    require_same(a, b, "subtract");
    return {a.value_ - b.value_, a.dim_};
  }
  friend Quantity operator-(const Quantity& a) { return {-a.value_, a.dim_}; }
  friend Quantity operator*(const Quantity& a, const Quantity& b) {
    return checked(a.value_ * b.value_, a.dim_ * b.dim_);
  }
  friend Quantity operator/(const Quantity& a, const Quantity& b) {
    return checked(a.value_ / b.value_, a.dim_ / b.dim_);
  }
  friend Quantity operator*(double s, const Quantity& a) {
    return checked(s * a.value_, a.dim_);
  }
  friend Quantity operator*(const Quantity& a, double s) { return s * a; }
  friend Quantity operator/(const Quantity& a, double s) {
    return checked(a.value_ / s, a.dim_);
  }

  friend bool operator==(const Quantity& a, const Quantity& b) {
    return a.dim_ == b.dim_ && a.value_ == b.value_;
  }
  friend bool operator<(const Quantity& a, const Quantity& b) {
    require_same(a, b, "compare");
    return a.value_ < b.value_;
  }
  friend bool operator>(const Quantity& a, const Quantity& b) { return b < a; }
  friend bool operator<=(const Quantity& a, const Quantity& b) {
    return !(b < a);
  }
  friend bool operator>=(const Quantity& a, const Quantity& b) {
    return !(a < b);
  }

 private:
  static void require_same(const Quantity& a, const Quantity& b,
                           const char* op) {
    if (a.dim_ != b.dim_) {
      throw DimensionError(std::string("cannot ") + op + " [" + a.dim_.str() +
                           "] and [" + b.dim_.str() + "]");
    }
  }
  static Quantity checked(double v, Dimension d) {
    if (!std::isfinite(v)) {
      throw ValueError("operation produced a non-finite value [" + d.str() +
                       "]");
    }
    return {v, d};
  }

  double value_;
  Dimension dim_;
};

inline Quantity quantity(double value, Dimension dim) { return {value, dim}; }

/// Integer power: value^k with exponents scaled by k.
Quantity pow(const Quantity& q, int k);

/// Square root; every dimension exponent must be even.
Quantity sqrt(const Quantity& q);

// Construction helpers for the units the project actually touches.
inline Quantity dimensionless(double v) { return {v, dims::none}; }
inline Quantity kilograms(double v) { return {v, dims::mass}; }
inline Quantity meters(double v) { return {v, dims::length}; }
inline Quantity seconds(double v) { return {v, dims::time}; }
inline Quantity coulombs(double v) { return {v, dims::charge}; }
inline Quantity joules(double v) { return {v, dims::energy}; }
inline Quantity newtons(double v) { return {v, dims::force}; }

/// Energy expressed in electronvolts. Throws DimensionError unless the
/// argument is an energy.
double convert_to_eV(const Quantity& energy);

/// CODATA 2018 values, SI. Immutable; every module pulls constants from here
/// so tests are pinned to one reference set.
struct Constants {
  const Quantity G;                  // m^3 kg^-1 s^-2
  const Quantity epsilon0;           // A^2 s^4 kg^-1 m^-3
  const Quantity elementary_charge;  // C
  const Quantity planck_h;           // J s
  const Quantity electronvolt;       // J

  static const Constants& codata2018();

  /// 1/(4 pi epsilon0), the electrostatic coupling used by the EM analog.
  Quantity coulomb_constant() const;

  static constexpr const char* version = "CODATA-2018";
};

}  // namespace dpcalc
