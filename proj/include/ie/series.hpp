#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ie/coefficient.hpp"

namespace ie {

enum class Ordering { less, equal, greater };
enum class Classification { zero, infinitesimal, appreciable, unlimited };

std::string_view to_string(Ordering o);
std::string_view to_string(Classification c);

/// Exact-tier hyperreal: a truncated Laurent series in the canonical positive
/// infinitesimal ε,
///
///   a_v ε^v + a_(v+1) ε^(v+1) + ... + a_(v+k-1) ε^(v+k-1) [+ O(ε^(v+k))]
///
/// with k <= window. A series either terminates (every coefficient past the
/// stored ones is exactly zero) or carries an unknown remainder starting at
/// truncation_order(). Zero is a distinguished value with no coefficients.
///
/// Invariants after normalization:
///  - the leading stored coefficient is not an exact zero;
///  - the stored length never exceeds window();
///  - valuation() >= -window().
class HyperSeries {
 public:
  static constexpr int kDefaultWindow = 8;

  /// The zero value.
  HyperSeries() = default;
  explicit HyperSeries(int window) : window_(window) {}

  static HyperSeries constant(const Coefficient& c, int window = kDefaultWindow);
  /// c ε^exponent
  static HyperSeries monomial(const Coefficient& c, int exponent, int window = kDefaultWindow);
  /// ε, the series with v = 1 and a_1 = 1.
  static HyperSeries epsilon(int window = kDefaultWindow);
  /// H = ε^(-1).
  static HyperSeries unlimited(int window = kDefaultWindow);
  /// Builds and normalizes a_v ε^v + ... ; `order` is the exponent of the
  /// unknown remainder, or nullopt for a terminating series.
  static HyperSeries from_terms(int valuation, std::vector<Coefficient> terms, int window,
                                std::optional<int> order = std::nullopt);

  bool is_zero() const noexcept { return terms_.empty(); }
  int valuation() const noexcept { return valuation_; }
  int window() const noexcept { return window_; }
  std::span<const Coefficient> terms() const noexcept { return terms_; }
  /// Exponent at which the unknown remainder starts; nullopt when exact beyond the stored terms.
  std::optional<int> truncation_order() const noexcept { return order_; }
  bool terminates() const noexcept { return !order_.has_value(); }
  /// True when every stored coefficient is an exact rational.
  bool exact_coefficients() const;

  /// Coefficient of ε^exponent. Throws WindowCollapse if it lies in the unknown remainder.
  Coefficient coefficient(int exponent) const;

  /// Adds an O(ε^order) remainder (no-op on zero and when already coarser).
  HyperSeries truncated_at(int order) const;
  HyperSeries with_window(int window) const;

  HyperSeries operator-() const;
  friend HyperSeries operator+(const HyperSeries& x, const HyperSeries& y);
  friend HyperSeries operator-(const HyperSeries& x, const HyperSeries& y);
  friend HyperSeries operator*(const HyperSeries& x, const HyperSeries& y);
  friend HyperSeries operator/(const HyperSeries& x, const HyperSeries& y);

  /// Representation equality: same terms, valuation and remainder order.
  friend bool operator==(const HyperSeries& x, const HyperSeries& y);
  friend bool operator!=(const HyperSeries& x, const HyperSeries& y) { return !(x == y); }

 private:
  int valuation_ = 0;
  std::vector<Coefficient> terms_;
  std::optional<int> order_;
  int window_ = kDefaultWindow;
};

HyperSeries add(const HyperSeries& x, const HyperSeries& y);
HyperSeries mul(const HyperSeries& x, const HyperSeries& y);
/// Throws DivisionByZero on zero.
HyperSeries inverse(const HyperSeries& x);
/// Integer power; negative exponents go through inverse().
HyperSeries pow(const HyperSeries& x, long exponent);

/// Sign of the leading coefficient of y - x. Throws PrecisionUndecided when
/// that coefficient is approximate and straddles zero, WindowCollapse when the
/// difference vanishes inside the window but the operands are truncated.
Ordering compare(const HyperSeries& x, const HyperSeries& y);

/// Leading approximate coefficients whose error interval contains zero are
/// treated as zero at the working precision.
Classification classify(const HyperSeries& x);
bool is_limited(const HyperSeries& x);

/// Coefficient of ε^0. Throws UnlimitedHasNoStandardPart for unlimited x.
Coefficient standard_part(const HyperSeries& x);

/// x ≐ y: the difference is zero or infinitesimal.
bool adequal(const HyperSeries& x, const HyperSeries& y);

/// Canonical text: terms by increasing ε-exponent, `H^k` for negative
/// exponents, `eps^k` for positive ones, exact rationals as `p/q`.
std::string to_string(const HyperSeries& x);

}  // namespace ie
