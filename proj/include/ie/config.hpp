#pragma once

#include "ie/rational.hpp"

namespace ie {

/// Engine-wide knobs. Passed explicitly; there is no global configuration.
struct Config {
  /// Truncation window W: number of ε-coefficients a series carries.
  int window = 8;
  /// Decimal digits P for transcendental coefficients.
  int precision = 50;
  /// Largest index sampled on the sequence tier.
  Integer horizon = 10000;
  /// Agreement tolerance for sequence-tier standard parts.
  Rational tol = Rational(1, 100000000);

  /// Throws InvalidArgument unless W >= 2, P >= 10, horizon >= 16 and tol > 0.
  void validate() const;
};

}  // namespace ie

namespace ie {

/// Largest power (in bits) the sequence tier will materialize before raising
/// BudgetExceeded. Keeps indices such as 2^(2^j) from exhausting memory.
inline constexpr unsigned long kMaxPowerBits = 1UL << 22;

}  // namespace ie
