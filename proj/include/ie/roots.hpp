#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ie/expr.hpp"
#include "ie/rational.hpp"

namespace ie {

/// [lo, hi] with the signs of f at the ends; sign_lo * sign_hi <= 0.
struct Bracket {
  Rational lo;
  Rational hi;
  int sign_lo = 0;
  int sign_hi = 0;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& r) const { return lo <= r && r <= hi; }
  friend bool operator==(const Bracket& a, const Bracket& b) {
    return a.lo == b.lo && a.hi == b.hi && a.sign_lo == b.sign_lo && a.sign_hi == b.sign_hi;
  }
};

struct DigitExpansion {
  int sign = 1;
  Integer integer_part;
  /// One subdivision index per iteration (the digit of that decimal place).
  std::vector<int> digits;
  /// Bracket after each completed iteration; an exact hit adds none.
  std::vector<Bracket> brackets;
  std::optional<Rational> exact_hit;
  /// Fractional decimal places settled by the final bracket.
  int places = 0;

  /// The root to `places` decimals, truncated toward the lower end.
  std::string decimal() const;
};

/// Sign of f at q. Exact for rational f; otherwise the value is bracketed at
/// precision P, 2P, 4P, 8P before giving up with SignUndecidable.
int sign_at(const Expr& f, const Rational& q, int precision = 50);

/// [lo, hi] with its end signs. Throws NoSignChange when f has the same
/// nonzero sign at both ends.
Bracket make_bracket(const Expr& f, const Rational& lo, const Rational& hi, int precision = 50);

/// Stevin's procedure: k rounds of ten-way subdivision, keeping the leftmost
/// cell with a sign change.
DigitExpansion stevin_digits(const Expr& f, const Bracket& b, int k, int precision = 50);

struct IvtResult {
  /// Bracket after each completed subdivision.
  std::vector<Bracket> brackets;
  std::optional<Rational> exact_hit;

  const Bracket& final_bracket() const { return brackets.back(); }
};

/// Cauchy's m-way subdivision, iters rounds. `brackets` starts with b itself.
IvtResult cauchy_ivt(const Expr& f, const Bracket& b, int m, int iters, int precision = 50);

}  // namespace ie
