#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "ie/coefficient.hpp"
#include "ie/series.hpp"
#include "ie/stream.hpp"
#include "ie/transcendental.hpp"

namespace ie {

/// Immutable expression tree over rationals, variables and the elementary
/// functions. Subtrees are shared.
class Expr {
 public:
  enum class Kind { constant, variable, add, sub, mul, div, pow, neg, call };

  static Expr constant(const Rational& value);
  static Expr variable(std::string name);
  static Expr binary(Kind kind, Expr lhs, Expr rhs);
  /// `exponent` must evaluate to an integer wherever the tree is evaluated.
  static Expr power(Expr base, Expr exponent);
  static Expr negate(Expr operand);
  static Expr call(Function f, Expr argument);

  Kind kind() const;
  const Rational& value() const;     // constant
  const std::string& name() const;   // variable
  Function function() const;         // call
  const Expr& lhs() const;           // binary, pow base
  const Expr& rhs() const;           // binary, pow exponent
  const Expr& operand() const;       // neg, call

  /// Structural equality.
  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

/// Grammar:
///   expr     := term (('+'|'-') term)*
///   term     := factor (('*'|'/') factor)*
///   factor   := base ('^' exponent)?
///   exponent := ['-'] (integer | ident) | '(' expr ')'
///   base     := number | ident | ident '(' expr ')' | '(' expr ')' | '-' base
/// Unary minus binds tighter than '^', so "-x^2" is (-x)^2. Numbers are
/// integers, decimals and p/q (folded into a single constant). Throws
/// SyntaxError (with the byte offset) or UnknownFunction.
Expr parse(std::string_view source);

/// Text that parses back to an identical tree.
std::string render(const Expr& e);

/// Free identifiers, excluding the reserved `eps` and `H`.
std::set<std::string> free_variables(const Expr& e);

/// The single free variable other than `n` (or `x` when there is none).
/// Throws InvalidArgument when there are several.
std::string function_variable(const Expr& e);

/// d e / d var by the usual rewrite rules, lightly simplified.
/// Throws DomainError for a variable exponent.
Expr symbolic_derivative(const Expr& e, std::string_view var);

struct EvalContext {
  std::map<std::string, HyperSeries, std::less<>> series;
  std::map<std::string, HyperStream, std::less<>> streams;
  int precision = 50;
  int window = HyperSeries::kDefaultWindow;
};

/// Natural extension f* of the expression to exact-tier arguments. Function
/// calls expand as Taylor jets around the standard part of the argument.
HyperSeries eval_series(const Expr& e, const EvalContext& ctx);

/// Pointwise evaluation along indices; `n` is the index. Transcendental calls
/// are evaluated to ctx.precision digits and rounded to a rational.
HyperStream eval_stream(const Expr& e, const EvalContext& ctx);

/// Evaluation at real (possibly approximate) arguments.
Coefficient eval_scalar(const Expr& e, const std::map<std::string, Coefficient, std::less<>>& bindings,
                        int precision);

/// Double-precision closure of a one-variable expression, for quadrature.
/// Returns NaN outside the domain.
std::function<double(double)> compile_real(const Expr& e, std::string var);

/// Taylor coefficients f^(k)(s)/k!, k = 0..count-1, of f at the real point s.
std::vector<Coefficient> function_jet(Function f, const Coefficient& s, int count, int precision);

/// Stream literal: `const:<q>`, `partial_sum:<expr in k, n>` (sum over
/// k = 1..n), or a closed-form expression in `n` such as `(-1)^n/n`.
HyperStream parse_stream(std::string_view spec, int precision = 50);

/// Partial sums n ↦ Σ_{k=1..n} summand(k, n). Indices past `budget` raise
/// BudgetExceeded.
HyperStream partial_sum_stream(const Expr& summand, int precision = 50,
                               unsigned long budget = 1UL << 14);

}  // namespace ie
