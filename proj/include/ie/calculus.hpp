#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ie/config.hpp"
#include "ie/expr.hpp"
#include "ie/series.hpp"
#include "ie/stream.hpp"
#include "ie/verdict.hpp"

namespace ie {

/// An interval of the real line. Missing endpoints are infinite.
struct Domain {
  std::optional<Rational> lo;
  std::optional<Rational> hi;
  bool lo_closed = false;
  bool hi_closed = false;

  static Domain whole_line() { return {}; }
  static Domain closed(const Rational& lo, const Rational& hi);
  static Domain open(const Rational& lo, const Rational& hi);

  /// "R", "[0,1]", "(0,1)", "[0,1)", "(0,inf)", "(-inf,2]". Throws InvalidArgument.
  static Domain parse(std::string_view text);

  bool contains(const HyperSeries& x) const;
  std::string to_string() const;
};

/// st((f(a+ε) - f(a)) / ε). Throws UnlimitedHasNoStandardPart when the
/// difference quotient is unlimited.
Coefficient derivative(const Expr& f, const HyperSeries& a, const Config& cfg);

struct LimitReport {
  Verdict<ApproxReal> verdict;
  /// s_standard_part of r along each index in {n, n², n+7, 2^n}.
  std::vector<std::pair<std::string, Verdict<ApproxReal>>> battery;
};

LimitReport limit(const HyperStream& r, const Config& cfg);

/// One increment test: y = x + δ and the image gap f(y) - f(x).
struct ProbeResult {
  std::string label;
  HyperSeries x;
  HyperSeries y;
  HyperSeries fx;
  HyperSeries fy;
  HyperSeries gap;
  Classification gap_class = Classification::zero;

  bool passed() const;
};

/// Outcome of a continuity test at one point. `holds` is meaningful only when
/// decided.
struct PointReport {
  VerdictStatus status = VerdictStatus::undecided_probe;
  bool holds = false;
  std::optional<ProbeResult> witness;
  std::vector<ProbeResult> probes;
  /// Probes skipped because f is undefined there.
  std::vector<std::string> skipped;
  /// Bound on |st f'| over the point and its probes.
  std::optional<Rational> certificate;
  std::string note;
};

/// Cauchy's form: every probe increment δ ∈ {ε, -ε, ε², 3ε} gives an
/// infinitesimal change in f. Throws DomainError when f is undefined at a.
PointReport continuous_at(const Expr& f, const Rational& a, const Config& cfg);

/// f(y) ≐ f(x) for the probes y ∈ {x+ε, x-ε, x+ε², x+1/x (x unlimited)}.
/// Probes outside `domain` are not taken.
PointReport microcontinuous_at(const Expr& f, const HyperSeries& x, const Config& cfg,
                               const std::optional<Domain>& domain = std::nullopt);

enum class UCVerdict { uc, not_uc, undecided };
std::string_view to_string(UCVerdict v);

struct UCReport {
  UCVerdict verdict = UCVerdict::undecided;
  std::optional<ProbeResult> witness;
  /// Exact recheck of the witness: δ infinitesimal and the gap not.
  bool witness_revalidated = false;
  std::optional<Rational> certificate;
  std::vector<HyperSeries> battery;
  std::vector<PointReport> points;
  std::string note;
};

UCReport uniformly_continuous(const Expr& f, const Domain& d, const Config& cfg);

struct UniformConvergenceReport {
  VerdictStatus status = VerdictStatus::undecided_horizon;
  bool holds = false;
  /// Limit of s(n, x_n) - f(x_n).
  LimitReport remainder;
};

/// Checks whether the remainder s(n, x_n) - f(x_n) is infinitesimal along
/// the rule x_n (default 1/n). `s` is an expression in n and the variable of `f`.
UniformConvergenceReport uniform_convergence_probe(const Expr& s, const Expr& f, const Config& cfg,
                                                   const std::optional<HyperStream>& rule = std::nullopt);

}  // namespace ie
