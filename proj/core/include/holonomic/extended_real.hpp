#pragma once

#include <compare>
#include <limits>
#include <optional>
#include <ostream>

#include "holonomic/error.hpp"

namespace holonomic {

/// A nonnegative-or-finite real, or +infinity. Radii of trivial groups are
/// genuinely infinite, so this is a tagged value rather than a sentinel.
class ExtendedReal {
 public:
  static ExtendedReal infinity() noexcept { return ExtendedReal(); }
  static ExtendedReal finite(double x);

  bool is_finite() const noexcept { return value_.has_value(); }
  bool is_infinite() const noexcept { return !value_.has_value(); }

  /// Throws kInvalidInput when infinite.
  double value() const;
  /// +inf as an IEEE double, for arithmetic that tolerates it.
  double to_double() const noexcept {
    return value_ ? *value_ : std::numeric_limits<double>::infinity();
  }

  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) noexcept {
    return a.value_ == b.value_;
  }
  friend std::partial_ordering operator<=>(const ExtendedReal& a, const ExtendedReal& b) noexcept {
    return a.to_double() <=> b.to_double();
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtendedReal& x) {
    if (x.is_infinite()) return os << "+inf";
    return os << *x.value_;
  }

 private:
  ExtendedReal() = default;
  explicit ExtendedReal(double x) : value_(x) {}

  std::optional<double> value_;
};

}  // namespace holonomic
