#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ie {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline int sign(const Rational& q) { return sgn(q); }
inline int sign(const Integer& z) { return sgn(z); }

/// 10^k for any integer k.
Rational pow10(long k);

/// base^exp by repeated squaring; exp may be negative (base must then be nonzero).
Rational ipow(const Rational& base, long exp);

/// Exact rational as "p" or "p/q".
std::string to_string(const Rational& q);

/// Fixed-point decimal rendering with `decimals` fractional digits, rounded
/// to nearest (ties away from zero).
std::string to_decimal(const Rational& q, int decimals);

/// Truncating decimal rendering (rounds toward negative infinity).
std::string to_decimal_floor(const Rational& q, int decimals);

/// Parses "12", "-3/4", "1.25", "-0.5e-3". Throws ie::Error(SyntaxError).
Rational parse_rational(std::string_view text);

/// floor(log2(|q|)) for q != 0.
long floor_log2(const Rational& q);

/// Nearest multiple of 2^exp2 (ties away from zero).
Rational round_to_dyadic(const Rational& q, long exp2);

/// Smallest multiple of 2^exp2 that is >= q.
Rational ceil_to_dyadic(const Rational& q, long exp2);

/// 2^k for any integer k.
Rational pow2(long k);

/// Best-effort conversion for reporting; not used on exact paths.
double to_double(const Rational& q);

Integer floor(const Rational& q);

}  // namespace ie
