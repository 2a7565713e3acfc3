#pragma once

#include <optional>
#include <vector>

#include "ie/config.hpp"
#include "ie/expr.hpp"
#include "ie/verdict.hpp"

namespace ie {

/// atan(eps/alpha): the kernel α/(α² + (μ-a)²) integrated over [a, a+eps].
HyperSeries delta_weight(const HyperSeries& alpha, const HyperSeries& eps, const Config& cfg);

/// (1/2)∫_{a-eps}^{a+eps} F(μ) α dμ / (α² + (μ-a)²), integrated termwise over
/// the jet of F at a. Throws HypothesisViolation unless alpha and eps are
/// positive infinitesimals with eps/alpha unlimited.
HyperSeries delta_symbolic(const Expr& F, const Rational& a, const HyperSeries& alpha, const HyperSeries& eps,
                           const Config& cfg);

struct DeltaRow {
  Integer n;
  long double value = 0;
  long double error = 0;
  unsigned long intervals = 0;
};

struct DeltaResult {
  /// Symbolic half-integral with the rules read at n = H, when it exists.
  std::optional<HyperSeries> symbolic;
  /// (π/2) F(a).
  Coefficient target;
  std::vector<DeltaRow> table;
  VerdictStatus status = VerdictStatus::undecided_horizon;
  /// Error bound required of the last row.
  Rational tolerance;
  std::string note;
};

/// The half-integral at finite scale alpha(n), eps(n) for each n in ns, by
/// composite Simpson in t = (μ-a)/alpha. Decided when the errors against
/// (π/2) F(a) decrease and the last is at most 2/ns.back().
DeltaResult delta_probe(const Expr& F, const Rational& a, const Expr& alpha_rule, const Expr& eps_rule,
                        const std::vector<Integer>& ns, const Config& cfg);

}  // namespace ie
