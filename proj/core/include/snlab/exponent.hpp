#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace snlab {

// Holder exponent p in [1, inf]. Infinity is a first-class value
// (stored as the IEEE infinity), so l^inf spaces need no special casing
// at call sites.
class Exponent {
 public:
  Exponent() = default;
  explicit Exponent(double value) : value_(value) {
    if (std::isnan(value) || value < 1.0) {
      throw std::invalid_argument("exponent must lie in [1, inf], got " +
                                  std::to_string(value));
    }
  }

  static Exponent one() { return Exponent(1.0); }
  static Exponent two() { return Exponent(2.0); }
  static Exponent inf() {
    return Exponent(std::numeric_limits<double>::infinity());
  }

  double value() const { return value_; }
  bool is_inf() const { return std::isinf(value_); }
  bool is(double v) const { return value_ == v; }

  // Conjugate exponent p' with 1/p + 1/p' = 1.
  //
  // Results within double noise of an integer are snapped to that integer
  // so that dual(dual(p)) reproduces p exactly for every representable p
  // (e.g. dual(4/3) would otherwise come out as 4 + 9e-16).
  Exponent dual() const {
    if (is_inf()) return one();
    if (value_ == 1.0) return inf();
    if (value_ == 2.0) return two();
    double q = value_ / (value_ - 1.0);
    const double r = std::round(q);
    if (r >= 2.0 && std::abs(q - r) <= 1e-12 * r) q = r;
    return Exponent(q);
  }

  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.value_ == b.value_ ||
           (std::isinf(a.value_) && std::isinf(b.value_));
  }
  friend bool operator!=(const Exponent& a, const Exponent& b) {
    return !(a == b);
  }

 private:
  double value_ = 2.0;
};

inline std::string to_string(const Exponent& p) {
  if (p.is_inf()) return "inf";
  if (p.value() == std::floor(p.value())) {
    return std::to_string(static_cast<long long>(p.value()));
  }
  return std::to_string(p.value());
}

}  // namespace snlab
