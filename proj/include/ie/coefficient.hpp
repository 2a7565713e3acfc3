#pragma once

#include <string>

#include "ie/rational.hpp"

namespace ie {

/// A real coefficient: either an exact rational or a rational midpoint with a
/// rigorous absolute error bound. Approximate coefficients keep their midpoint
/// on a dyadic grid a few bits finer than the error, so denominators stay
/// bounded under repeated arithmetic.
class Coefficient {
 public:
  Coefficient() = default;
  Coefficient(const Rational& value) : value_(value) {}  // NOLINT(implicit)
  Coefficient(long value) : value_(value) {}             // NOLINT(implicit)

  static Coefficient approx(const Rational& value, const Rational& error);

  bool exact() const noexcept { return exact_; }
  const Rational& value() const noexcept { return value_; }
  /// Zero for exact coefficients.
  const Rational& error() const noexcept { return error_; }

  bool is_exact_zero() const { return exact_ && value_ == 0; }
  /// True when zero lies inside the error interval (always false for exact nonzero).
  bool possibly_zero() const;
  /// -1, 0 or +1. Throws PrecisionUndecided when the interval straddles zero.
  int sign() const;
  bool contains(const Rational& r) const;
  /// Upper bound on |x|.
  Rational magnitude_bound() const;

  Coefficient operator-() const;
  friend Coefficient operator+(const Coefficient& a, const Coefficient& b);
  friend Coefficient operator-(const Coefficient& a, const Coefficient& b);
  friend Coefficient operator*(const Coefficient& a, const Coefficient& b);
  /// Throws DivisionByZero for an exact zero divisor, PrecisionUndecided when
  /// the divisor's interval contains zero.
  friend Coefficient operator/(const Coefficient& a, const Coefficient& b);

  /// Representation equality (kind, midpoint and bound all identical).
  friend bool operator==(const Coefficient& a, const Coefficient& b);
  friend bool operator!=(const Coefficient& a, const Coefficient& b) { return !(a == b); }

 private:
  Coefficient(const Rational& value, const Rational& error, bool exact)
      : value_(value), error_(error), exact_(exact) {}
  static Coefficient tidy(Rational value, Rational error);

  Rational value_{0};
  Rational error_{0};
  bool exact_ = true;
};

/// Plain text: exact values as "p/q", approximate values as a decimal carrying
/// the digits the error bound supports.
std::string to_string(const Coefficient& c);

/// Number of fractional decimal digits justified by the error bound.
int supported_decimals(const Coefficient& c);

}  // namespace ie
