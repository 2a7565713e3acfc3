#include "ie/coefficient.hpp"

#include <algorithm>

#include "ie/error.hpp"

namespace ie {

namespace {

// Midpoints are kept on a grid this many bits below the error bound.
constexpr long kGuardBits = 24;

}  // namespace

Coefficient Coefficient::tidy(Rational value, Rational error) {
  if (error == 0) return Coefficient(value, error, false);
  const long step = floor_log2(error) - kGuardBits;
  Rational rounded = round_to_dyadic(value, step);
  error += abs(Rational(rounded - value));
  error = ceil_to_dyadic(error, step);
  return Coefficient(rounded, error, false);
}

Coefficient Coefficient::approx(const Rational& value, const Rational& error) {
  if (error < 0) raise(ErrorCode::InvalidArgument, "negative error bound");
  return tidy(value, error);
}

bool Coefficient::possibly_zero() const {
  if (exact_) return value_ == 0;
  return abs(value_) <= error_;
}

int Coefficient::sign() const {
  if (exact_) return ie::sign(value_);
  if (possibly_zero()) {
    raise(ErrorCode::PrecisionUndecided,
          "sign of " + to_string(*this) + " is not determined at this precision");
  }
  return ie::sign(value_);
}

bool Coefficient::contains(const Rational& r) const { return abs(Rational(value_ - r)) <= error_; }

Rational Coefficient::magnitude_bound() const { return abs(value_) + error_; }

Coefficient Coefficient::operator-() const { return Coefficient(-value_, error_, exact_); }

Coefficient operator+(const Coefficient& a, const Coefficient& b) {
  if (a.exact_ && b.exact_) return Coefficient(a.value_ + b.value_);
  return Coefficient::tidy(a.value_ + b.value_, a.error_ + b.error_);
}

Coefficient operator-(const Coefficient& a, const Coefficient& b) { return a + (-b); }

Coefficient operator*(const Coefficient& a, const Coefficient& b) {
  if (a.exact_ && b.exact_) return Coefficient(a.value_ * b.value_);
  if (a.is_exact_zero() || b.is_exact_zero()) return Coefficient(0);
  Rational err = abs(a.value_) * b.error_ + abs(b.value_) * a.error_ + a.error_ * b.error_;
  return Coefficient::tidy(a.value_ * b.value_, err);
}

Coefficient operator/(const Coefficient& a, const Coefficient& b) {
  if (b.is_exact_zero()) raise(ErrorCode::DivisionByZero, "division by exact zero");
  if (b.exact_) {
    if (a.exact_) return Coefficient(a.value_ / b.value_);
    return Coefficient::tidy(a.value_ / b.value_, a.error_ / abs(b.value_));
  }
  if (b.possibly_zero()) {
    raise(ErrorCode::PrecisionUndecided, "divisor " + to_string(b) + " may be zero");
  }
  // |a/b - a0/b0| <= (|a0| eb + |b0| ea) / (|b0| (|b0| - eb))
  const Rational b_abs = abs(b.value_);
  Rational err = (abs(a.value_) * b.error_ + b_abs * a.error_) / (b_abs * (b_abs - b.error_));
  return Coefficient::tidy(a.value_ / b.value_, err);
}

bool operator==(const Coefficient& a, const Coefficient& b) {
  return a.exact_ == b.exact_ && a.value_ == b.value_ && a.error_ == b.error_;
}

int supported_decimals(const Coefficient& c) {
  if (c.exact() || c.error() == 0) return 0;
  // largest d with 10^-d >= error
  int d = 0;
  Rational step(1);
  while (d < 200 && step / 10 >= c.error()) {
    step /= 10;
    ++d;
  }
  return std::max(d, 1);
}

std::string to_string(const Coefficient& c) {
  if (c.exact()) return to_string(c.value());
  return to_decimal(c.value(), supported_decimals(c));
}

}  // namespace ie
