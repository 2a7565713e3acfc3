#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ie/config.hpp"
#include "ie/series.hpp"
#include "ie/verdict.hpp"

namespace ie {

/// Sequence-tier hyperreal: the representative sequence (r_1, r_2, ...) of an
/// element of the ultrapower. Indices start at 1.
///
/// Generators must be pure. Values are memoized behind a mutex, so a stream
/// may be shared across threads. A generator that cannot produce a value at
/// some index throws; the error is cached and rethrown on every access to
/// that index.
class HyperStream {
 public:
  using Generator = std::function<Rational(const Integer&)>;

  HyperStream(Generator gen, std::string label, size_t cache_limit = 4096);

  Rational at(const Integer& n) const;
  Rational at(unsigned long n) const { return at(Integer(n)); }
  const std::string& label() const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

/// ℕ-valued index sequence (a hypernatural).
class HyperNat {
 public:
  using Generator = std::function<Integer(const Integer&)>;

  HyperNat(Generator gen, std::string label);

  Integer at(const Integer& j) const;
  const std::string& label() const { return label_; }

  static HyperNat identity();
  static HyperNat square();
  static HyperNat shifted(unsigned long k);
  static HyperNat power_of_two();
  static HyperNat constant(const Integer& c);

 private:
  Generator gen_;
  std::string label_;
};

namespace streams {

HyperStream constant(const Rational& c);
/// n ↦ 1/n
HyperStream reciprocal();
/// n ↦ n
HyperStream identity();
/// n ↦ n²
HyperStream square();
/// n ↦ n + k
HyperStream shifted(long k);
/// n ↦ 2^n
HyperStream power_of_two();
/// n ↦ (-1)^n / n
HyperStream alternating_reciprocal();

}  // namespace streams

HyperStream s_add(const HyperStream& x, const HyperStream& y);
HyperStream s_mul(const HyperStream& x, const HyperStream& y);
HyperStream s_neg(const HyperStream& x);
HyperStream s_sub(const HyperStream& x, const HyperStream& y);

/// Sorted sample indices for horizon h: powers of two up to h, the quarter
/// points h/4, h/2, 3h/4, h, and the predecessor of every such point (so
/// parity-dependent behaviour is visible).
std::vector<Integer> sampling_schedule(const Integer& horizon);

/// Largest j <= horizon at which the stream can be evaluated without
/// exceeding its evaluation budget (0 if none).
Integer effective_horizon(const HyperStream& x, const Integer& horizon);

/// Order of x relative to y decided along the sample schedule.
Verdict<Ordering> s_compare(const HyperStream& x, const HyperStream& y, const Integer& horizon);

/// Standard part detected from the tail of the sample schedule, either
/// directly (tail samples agree within tol) or after polynomial extrapolation
/// in 1/n over the trailing powers of two.
Verdict<ApproxReal> s_standard_part(const HyperStream& x, const Integer& horizon,
                                    const Rational& tol);

/// n ↦ Σ a_i n^(-i). Throws NonExactCoefficient unless every coefficient is exact.
HyperStream embed(const HyperSeries& x);

/// j ↦ r(K(j)).
HyperStream extend_at(const HyperStream& r, const HyperNat& index);

}  // namespace ie
