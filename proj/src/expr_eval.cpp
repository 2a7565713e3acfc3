#include <cmath>
#include <functional>
#include <mutex>
#include <optional>

#include "ie/error.hpp"
#include "ie/expr.hpp"

namespace ie {

std::vector<Coefficient> function_jet(Function f, const Coefficient& s, int count, int precision) {
  std::vector<Coefficient> c;
  if (count <= 0) return c;
  c.reserve(static_cast<size_t>(count));
  switch (f) {
    case Function::exp: {
      const Coefficient e = eval_function(Function::exp, s, precision);
      Rational factorial(1);
      for (int k = 0; k < count; ++k) {
        if (k > 0) factorial *= k;
        c.push_back(e / Coefficient(factorial));
      }
      break;
    }
    case Function::sin:
    case Function::cos: {
      const Coefficient sn = eval_function(Function::sin, s, precision);
      const Coefficient cs = eval_function(Function::cos, s, precision);
      // derivatives of sin cycle through sin, cos, -sin, -cos; cos starts one step later
      const Coefficient cycle[4] = {sn, cs, -sn, -cs};
      const int offset = f == Function::sin ? 0 : 1;
      Rational factorial(1);
      for (int k = 0; k < count; ++k) {
        if (k > 0) factorial *= k;
        c.push_back(cycle[(k + offset) % 4] / Coefficient(factorial));
      }
      break;
    }
    case Function::ln: {
      c.push_back(eval_function(Function::ln, s, precision));
      Coefficient power(1);  // s^k
      for (int k = 1; k < count; ++k) {
        power = power * s;
        const Coefficient term = Coefficient(1) / (Coefficient(k) * power);
        c.push_back(k % 2 == 1 ? term : -term);
      }
      break;
    }
    case Function::sqrt: {
      if (s.possibly_zero()) {
        raise(ErrorCode::DomainError, "sqrt at a point with standard part 0 has no Laurent jet");
      }
      const Coefficient root = eval_function(Function::sqrt, s, precision);
      Rational binom(1);  // binomial(1/2, k)
      Coefficient power(1);
      for (int k = 0; k < count; ++k) {
        if (k > 0) {
          binom = binom * (Rational(1, 2) - (k - 1)) / k;
          power = power * s;
        }
        c.push_back(root * Coefficient(binom) / power);
      }
      break;
    }
    case Function::atan: {
      c.push_back(eval_function(Function::atan, s, precision));
      // 1/(1 + (s+d)^2) = Σ d_n δ^n, then integrate termwise.
      const Coefficient q0 = Coefficient(1) + s * s;
      const Coefficient q1 = Coefficient(2) * s;
      std::vector<Coefficient> d;
      for (int n = 0; n + 1 < count; ++n) {
        Coefficient acc;
        if (n >= 1) acc = acc + q1 * d[static_cast<size_t>(n - 1)];
        if (n >= 2) acc = acc + d[static_cast<size_t>(n - 2)];
        d.push_back(n == 0 ? Coefficient(1) / q0 : -acc / q0);
        c.push_back(d.back() / Coefficient(n + 1));
      }
      break;
    }
    case Function::abs:
      raise(ErrorCode::InvalidArgument, "abs has no Taylor jet; it is evaluated by sign");
  }
  return c;
}

namespace {

constexpr std::string_view kEps = "eps";
constexpr std::string_view kUnlimited = "H";

long integer_exponent(const Rational& k, const std::string& where) {
  if (k.get_den() != 1) raise(ErrorCode::DomainError, "non-integer exponent " + to_string(k) + " in " + where);
  if (!k.get_num().fits_slong_p()) raise(ErrorCode::BudgetExceeded, "exponent " + to_string(k) + " is too large");
  return k.get_num().get_si();
}

// ---- exact tier ------------------------------------------------------------

HyperSeries series_of(const Expr& e, const EvalContext& ctx);

HyperSeries call_series(Function f, const HyperSeries& x, const EvalContext& ctx) {
  const int w = ctx.window;
  if (f == Function::abs) {
    if (x.is_zero()) return x;
    return compare(x, HyperSeries(w)) == Ordering::less ? -x : x;
  }
  if (x.is_zero()) return HyperSeries::constant(eval_function(f, Coefficient(0), ctx.precision), w);

  const Classification cls = classify(x);
  if (cls == Classification::unlimited) {
    if (f != Function::atan) {
      raise(ErrorCode::UnlimitedArgument,
            std::string(function_name(f)) + " at unlimited argument " + to_string(x));
    }
    // atan(x) = sign(x) π/2 - atan(1/x), with 1/x infinitesimal
    const bool negative = compare(x, HyperSeries(w)) == Ordering::less;
    const Coefficient half_pi = pi(ctx.precision) / Coefficient(2);
    const HyperSeries reflected = call_series(Function::atan, inverse(x), ctx);
    return HyperSeries::constant(negative ? -half_pi : half_pi, w) - reflected;
  }

  const Coefficient s = standard_part(x);
  if ((f == Function::ln || f == Function::sqrt) && (s.possibly_zero() || s.value() < 0)) {
    raise(ErrorCode::DomainError, std::string(function_name(f)) + " at " + to_string(x) +
                                      ": standard part is not positive");
  }

  // Infinitesimal tail δ = x - st(x): the terms of exponent >= 1.
  const auto order = x.truncation_order();
  if (order && *order <= 1) {
    return HyperSeries::constant(eval_function(f, s, ctx.precision), w).truncated_at(*order);
  }
  std::vector<Coefficient> tail;
  for (int e = 1; e < (order ? *order : x.valuation() + static_cast<int>(x.terms().size())); ++e) {
    tail.push_back(x.coefficient(e));
  }
  const HyperSeries delta = HyperSeries::from_terms(1, std::move(tail), w, order);
  const std::vector<Coefficient> jet = function_jet(f, s, w + 1, ctx.precision);
  if (delta.is_zero()) return HyperSeries::constant(jet[0], w);

  HyperSeries acc = HyperSeries::constant(jet.back(), w);
  for (int k = static_cast<int>(jet.size()) - 2; k >= 0; --k) {
    acc = acc * delta + HyperSeries::constant(jet[static_cast<size_t>(k)], w);
  }
  // Taylor remainder O(δ^(K+1)).
  if (acc.is_zero()) return acc;
  return acc.truncated_at(static_cast<int>(jet.size()) * delta.valuation());
}

HyperSeries series_of(const Expr& e, const EvalContext& ctx) {
  const int w = ctx.window;
  switch (e.kind()) {
    case Expr::Kind::constant:
      return HyperSeries::constant(Coefficient(e.value()), w);
    case Expr::Kind::variable: {
      if (auto it = ctx.series.find(e.name()); it != ctx.series.end()) return it->second;
      if (e.name() == kEps) return HyperSeries::epsilon(w);
      if (e.name() == kUnlimited) return HyperSeries::unlimited(w);
      raise(ErrorCode::UnboundVariable, "variable '" + e.name() + "' is not bound");
    }
    case Expr::Kind::add: return series_of(e.lhs(), ctx) + series_of(e.rhs(), ctx);
    case Expr::Kind::sub: return series_of(e.lhs(), ctx) - series_of(e.rhs(), ctx);
    case Expr::Kind::mul: return series_of(e.lhs(), ctx) * series_of(e.rhs(), ctx);
    case Expr::Kind::div: {
      HyperSeries num = series_of(e.lhs(), ctx);
      HyperSeries den = series_of(e.rhs(), ctx);
      if (den.is_zero()) raise(ErrorCode::DomainError, "division by zero in " + render(e));
      return num * inverse(den);
    }
    case Expr::Kind::neg: return -series_of(e.operand(), ctx);
    case Expr::Kind::pow: {
      const HyperSeries k = series_of(e.rhs(), ctx);
      Rational exponent(0);
      if (!k.is_zero()) {
        if (k.valuation() != 0 || k.terms().size() != 1 || !k.terminates() || !k.terms()[0].exact()) {
          raise(ErrorCode::DomainError, "exponent of " + render(e) + " is not an integer constant");
        }
        exponent = k.terms()[0].value();
      }
      const long n = integer_exponent(exponent, render(e));
      const HyperSeries base = series_of(e.lhs(), ctx);
      if (base.is_zero() && n < 0) raise(ErrorCode::DomainError, "zero to a negative power in " + render(e));
      return pow(base, n);
    }
    case Expr::Kind::call:
      return call_series(e.function(), series_of(e.operand(), ctx), ctx);
  }
  raise(ErrorCode::InvalidArgument, "malformed expression");
}

// ---- rational and interval tiers ------------------------------------------

using Lookup = std::function<std::optional<Rational>(std::string_view)>;

Rational checked_rational_pow(const Rational& base, const Rational& exponent, const Expr& e) {
  const long k = [&] {
    if (exponent.get_den() != 1) {
      raise(ErrorCode::DomainError, "non-integer exponent " + to_string(exponent) + " in " + render(e));
    }
    if (base == 1) return 0L;
    if (base == -1) return mpz_odd_p(exponent.get_num_mpz_t()) ? 1L : 0L;
    return integer_exponent(exponent, render(e));
  }();
  if (base == -1) return k == 1 ? Rational(-1) : Rational(1);
  if (base == 0) {
    if (k < 0) raise(ErrorCode::DomainError, "zero to a negative power in " + render(e));
    return k == 0 ? Rational(1) : Rational(0);
  }
  const size_t bits = std::max(mpz_sizeinbase(base.get_num_mpz_t(), 2), mpz_sizeinbase(base.get_den_mpz_t(), 2));
  const unsigned long magnitude = static_cast<unsigned long>(k < 0 ? -k : k);
  if (magnitude > kMaxPowerBits || bits * magnitude > kMaxPowerBits) {
    raise(ErrorCode::BudgetExceeded, render(e) + " needs more than " + std::to_string(kMaxPowerBits) + " bits");
  }
  return ipow(base, k);
}

Rational rational_of(const Expr& e, const Lookup& lookup, int precision) {
  switch (e.kind()) {
    case Expr::Kind::constant: return e.value();
    case Expr::Kind::variable: {
      if (auto v = lookup(e.name())) return *v;
      raise(ErrorCode::UnboundVariable, "variable '" + e.name() + "' is not bound");
    }
    case Expr::Kind::add: return rational_of(e.lhs(), lookup, precision) + rational_of(e.rhs(), lookup, precision);
    case Expr::Kind::sub: return rational_of(e.lhs(), lookup, precision) - rational_of(e.rhs(), lookup, precision);
    case Expr::Kind::mul: return rational_of(e.lhs(), lookup, precision) * rational_of(e.rhs(), lookup, precision);
    case Expr::Kind::div: {
      const Rational num = rational_of(e.lhs(), lookup, precision);
      const Rational den = rational_of(e.rhs(), lookup, precision);
      if (den == 0) raise(ErrorCode::DomainError, "division by zero in " + render(e));
      return num / den;
    }
    case Expr::Kind::neg: return -rational_of(e.operand(), lookup, precision);
    case Expr::Kind::pow:
      return checked_rational_pow(rational_of(e.lhs(), lookup, precision),
                                  rational_of(e.rhs(), lookup, precision), e);
    case Expr::Kind::call: {
      const Rational arg = rational_of(e.operand(), lookup, precision);
      return eval_function(e.function(), Coefficient(arg), precision).value();
    }
  }
  raise(ErrorCode::InvalidArgument, "malformed expression");
}

Coefficient scalar_of(const Expr& e, const std::map<std::string, Coefficient, std::less<>>& b, int precision) {
  switch (e.kind()) {
    case Expr::Kind::constant: return Coefficient(e.value());
    case Expr::Kind::variable: {
      if (auto it = b.find(e.name()); it != b.end()) return it->second;
      if (e.name() == kEps || e.name() == kUnlimited) {
        raise(ErrorCode::DomainError, "'" + e.name() + "' is not a real number");
      }
      raise(ErrorCode::UnboundVariable, "variable '" + e.name() + "' is not bound");
    }
    case Expr::Kind::add: return scalar_of(e.lhs(), b, precision) + scalar_of(e.rhs(), b, precision);
    case Expr::Kind::sub: return scalar_of(e.lhs(), b, precision) - scalar_of(e.rhs(), b, precision);
    case Expr::Kind::mul: return scalar_of(e.lhs(), b, precision) * scalar_of(e.rhs(), b, precision);
    case Expr::Kind::div: {
      const Coefficient num = scalar_of(e.lhs(), b, precision);
      const Coefficient den = scalar_of(e.rhs(), b, precision);
      if (den.is_exact_zero()) raise(ErrorCode::DomainError, "division by zero in " + render(e));
      return num / den;
    }
    case Expr::Kind::neg: return -scalar_of(e.operand(), b, precision);
    case Expr::Kind::pow: {
      const Coefficient k = scalar_of(e.rhs(), b, precision);
      if (!k.exact()) raise(ErrorCode::DomainError, "exponent of " + render(e) + " is not exact");
      const Coefficient base = scalar_of(e.lhs(), b, precision);
      if (base.exact()) return Coefficient(checked_rational_pow(base.value(), k.value(), e));
      long n = integer_exponent(k.value(), render(e));
      Coefficient acc(1);
      Coefficient x = n < 0 ? Coefficient(1) / base : base;
      for (unsigned long m = static_cast<unsigned long>(n < 0 ? -n : n); m > 0; m >>= 1) {
        if (m & 1) acc = acc * x;
        if (m > 1) x = x * x;
      }
      return acc;
    }
    case Expr::Kind::call: return eval_function(e.function(), scalar_of(e.operand(), b, precision), precision);
  }
  raise(ErrorCode::InvalidArgument, "malformed expression");
}

}  // namespace

HyperSeries eval_series(const Expr& e, const EvalContext& ctx) { return series_of(e, ctx); }

Coefficient eval_scalar(const Expr& e, const std::map<std::string, Coefficient, std::less<>>& bindings,
                        int precision) {
  return scalar_of(e, bindings, precision);
}

HyperStream eval_stream(const Expr& e, const EvalContext& ctx) {
  const auto streams = ctx.streams;
  const int precision = ctx.precision;
  return HyperStream(
      [e, streams, precision](const Integer& n) {
        const Lookup lookup = [&](std::string_view name) -> std::optional<Rational> {
          if (auto it = streams.find(name); it != streams.end()) return it->second.at(n);
          if (name == "n") return Rational(n);
          if (name == kEps) return Rational(Integer(1), n);
          if (name == kUnlimited) return Rational(n);
          return std::nullopt;
        };
        return rational_of(e, lookup, precision);
      },
      render(e));
}

std::function<double(double)> compile_real(const Expr& e, std::string var) {
  using Fn = std::function<double(double)>;
  switch (e.kind()) {
    case Expr::Kind::constant: {
      const double c = to_double(e.value());
      return [c](double) { return c; };
    }
    case Expr::Kind::variable:
      if (e.name() != var) raise(ErrorCode::UnboundVariable, "variable '" + e.name() + "' is not bound");
      return [](double x) { return x; };
    case Expr::Kind::neg: {
      Fn a = compile_real(e.operand(), var);
      return [a](double x) { return -a(x); };
    }
    case Expr::Kind::call: {
      Fn a = compile_real(e.operand(), var);
      switch (e.function()) {
        case Function::sin: return [a](double x) { return std::sin(a(x)); };
        case Function::cos: return [a](double x) { return std::cos(a(x)); };
        case Function::exp: return [a](double x) { return std::exp(a(x)); };
        case Function::ln: return [a](double x) { const double v = a(x); return v > 0 ? std::log(v) : NAN; };
        case Function::sqrt: return [a](double x) { return std::sqrt(a(x)); };
        case Function::abs: return [a](double x) { return std::fabs(a(x)); };
        case Function::atan: return [a](double x) { return std::atan(a(x)); };
      }
      break;
    }
    default: {
      Fn l = compile_real(e.lhs(), var);
      Fn r = compile_real(e.rhs(), var);
      switch (e.kind()) {
        case Expr::Kind::add: return [l, r](double x) { return l(x) + r(x); };
        case Expr::Kind::sub: return [l, r](double x) { return l(x) - r(x); };
        case Expr::Kind::mul: return [l, r](double x) { return l(x) * r(x); };
        case Expr::Kind::div: return [l, r](double x) { const double d = r(x); return d != 0 ? l(x) / d : NAN; };
        case Expr::Kind::pow: return [l, r](double x) { return std::pow(l(x), std::round(r(x))); };
        default: break;
      }
    }
  }
  raise(ErrorCode::InvalidArgument, "malformed expression");
}

HyperStream partial_sum_stream(const Expr& summand, int precision, unsigned long budget) {
  const bool uses_n = free_variables(summand).count("n") > 0;
  auto term = [summand, precision](const Integer& k, const Integer& n) {
    const Lookup lookup = [&](std::string_view name) -> std::optional<Rational> {
      if (name == "k") return Rational(k);
      if (name == "n") return Rational(n);
      return std::nullopt;
    };
    return rational_of(summand, lookup, precision);
  };
  auto check_budget = [budget](const Integer& n) {
    if (n > Integer(budget)) {
      raise(ErrorCode::BudgetExceeded, "partial sum to " + n.get_str() + " exceeds the budget of " +
                                           std::to_string(budget) + " terms");
    }
    return n.get_ui();
  };
  const std::string label = "partial_sum:" + render(summand);
  if (uses_n) {
    return HyperStream(
        [term, check_budget](const Integer& n) {
          const unsigned long last = check_budget(n);
          Rational total(0);
          for (unsigned long k = 1; k <= last; ++k) total += term(Integer(k), n);
          return total;
        },
        label);
  }

  // Prefix sums with a checkpoint every kStride terms.
  struct Prefix {
    std::mutex mu;
    std::map<unsigned long, Rational> checkpoints{{0UL, Rational(0)}};
  };
  constexpr unsigned long kStride = 256;
  auto prefix = std::make_shared<Prefix>();
  return HyperStream(
      [term, check_budget, prefix](const Integer& n) {
        const unsigned long last = check_budget(n);
        unsigned long start;
        Rational total;
        {
          std::lock_guard lock(prefix->mu);
          auto it = std::prev(prefix->checkpoints.upper_bound(last));
          start = it->first;
          total = it->second;
        }
        for (unsigned long k = start + 1; k <= last; ++k) {
          total += term(Integer(k), Integer(k));
          if (k % kStride == 0) {
            std::lock_guard lock(prefix->mu);
            prefix->checkpoints.emplace(k, total);
          }
        }
        return total;
      },
      label);
}

HyperStream parse_stream(std::string_view spec, int precision) {
  constexpr std::string_view kConst = "const:";
  constexpr std::string_view kPartial = "partial_sum:";
  if (spec.substr(0, kConst.size()) == kConst) {
    const Expr value = parse(spec.substr(kConst.size()));
    return streams::constant(eval_scalar(value, {}, precision).value());
  }
  if (spec.substr(0, kPartial.size()) == kPartial) {
    const Expr summand = parse(spec.substr(kPartial.size()));
    for (const auto& v : free_variables(summand)) {
      if (v != "k" && v != "n") raise(ErrorCode::UnboundVariable, "partial sums range over k and n only, not '" + v + "'");
    }
    return partial_sum_stream(summand, precision);
  }
  const Expr e = parse(spec);
  for (const auto& v : free_variables(e)) {
    if (v != "n") raise(ErrorCode::UnboundVariable, "stream expressions use the index n only, not '" + v + "'");
  }
  EvalContext ctx;
  ctx.precision = precision;
  return eval_stream(e, ctx);
}

}  // namespace ie
