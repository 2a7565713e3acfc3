#include "ie/delta.hpp"

#include <cmath>

#include "ie/error.hpp"

namespace ie {

namespace {

void require_positive_infinitesimal(const HyperSeries& x, const char* name) {
  if (x.is_zero() || classify(x) != Classification::infinitesimal || compare(x, HyperSeries(x.window())) != Ordering::greater) {
    raise(ErrorCode::HypothesisViolation, std::string(name) + " = " + to_string(x) + " is not a positive infinitesimal");
  }
}

HyperSeries atan_of(const HyperSeries& t, const Config& cfg) {
  EvalContext ctx;
  ctx.precision = cfg.precision;
  ctx.window = cfg.window;
  ctx.series.emplace("t", t);
  return eval_series(Expr::call(Function::atan, Expr::variable("t")), ctx);
}

void append_note(DeltaResult& r, const std::string& note) { r.note += (r.note.empty() ? "" : "; ") + note; }

}  // namespace

HyperSeries delta_weight(const HyperSeries& alpha, const HyperSeries& eps, const Config& cfg) {
  return atan_of(eps * inverse(alpha), cfg);
}

HyperSeries delta_symbolic(const Expr& F, const Rational& a, const HyperSeries& alpha, const HyperSeries& eps,
                           const Config& cfg) {
  require_positive_infinitesimal(alpha, "alpha");
  require_positive_infinitesimal(eps, "eps");
  const HyperSeries ratio = eps * inverse(alpha);
  if (classify(ratio) != Classification::unlimited) {
    raise(ErrorCode::HypothesisViolation,
          "eps/alpha = " + to_string(ratio) + " is not unlimited; the half-integral is not (pi/2) F(a)");
  }

  // Jet of F at a: coefficients of ε^k in F(a + ε).
  const int w = cfg.window;
  EvalContext ctx;
  ctx.precision = cfg.precision;
  ctx.window = w;
  ctx.series.emplace(function_variable(F), HyperSeries::constant(Coefficient(a), w) + HyperSeries::epsilon(w));
  const HyperSeries jet = eval_series(F, ctx);
  if (jet.is_zero()) return HyperSeries(w);
  if (jet.valuation() < 0) raise(ErrorCode::DomainError, render(F) + " is unlimited near " + to_string(a));
  const int known = jet.truncation_order() ? *jet.truncation_order()
                                           : jet.valuation() + static_cast<int>(jet.terms().size());

  const HyperSeries arctan = atan_of(ratio, cfg);
  HyperSeries total(w);
  for (int m = 0; 2 * m < known; ++m) {
    const Coefficient c = jet.coefficient(2 * m);
    if (c.is_exact_zero()) continue;
    HyperSeries term = pow(alpha, 2 * m) * arctan;
    if (m % 2 == 1) term = -term;
    for (int j = 0; j < m; ++j) {
      HyperSeries piece = pow(alpha, 2 * m - 2 * j - 1) * pow(eps, 2 * j + 1) *
                          HyperSeries::constant(Coefficient(Rational(1, 2 * j + 1)), w);
      term = (m - 1 - j) % 2 == 0 ? term + piece : term - piece;
    }
    total = total + HyperSeries::constant(c, w) * term;
  }
  if (!jet.terminates()) {
    // The first omitted coefficient contributes at order val(alpha) + (known-1) val(eps) or higher.
    total = total.is_zero() ? total : total.truncated_at(alpha.valuation() + (known - 1) * eps.valuation());
  }
  return total;
}

DeltaResult delta_probe(const Expr& F, const Rational& a, const Expr& alpha_rule, const Expr& eps_rule,
                        const std::vector<Integer>& ns, const Config& cfg) {
  if (ns.empty()) raise(ErrorCode::InvalidArgument, "need at least one n");
  for (size_t i = 1; i < ns.size(); ++i) {
    if (!(ns[i - 1] < ns[i])) raise(ErrorCode::InvalidArgument, "n values must increase");
  }
  DeltaResult out;
  const std::string var = function_variable(F);
  const Coefficient fa = eval_scalar(F, {{var, Coefficient(a)}}, cfg.precision);
  out.target = pi(cfg.precision) / Coefficient(2) * fa;
  out.tolerance = Rational(Integer(2), ns.back());
  try {
    // The rules read at the unlimited index n = H.
    EvalContext at_h;
    at_h.precision = cfg.precision;
    at_h.window = cfg.window;
    at_h.series.emplace("n", HyperSeries::unlimited(cfg.window));
    out.symbolic = delta_symbolic(F, a, eval_series(alpha_rule, at_h), eval_series(eps_rule, at_h), cfg);
  } catch (const Error& e) {
    out.note = std::string("no symbolic value: ") + e.what();
  }

  const auto f = compile_real(F, var);
  const long double a_real = to_double(a);
  const long double target = to_double(out.target.value());
  EvalContext ctx;
  ctx.precision = cfg.precision;
  const HyperStream alpha_of = eval_stream(alpha_rule, ctx);
  const HyperStream eps_of = eval_stream(eps_rule, ctx);

  constexpr unsigned long kMinIntervals = 1UL << 10;
  constexpr unsigned long kMaxIntervals = 1UL << 26;
  constexpr long double kAgreement = 1e-10L;
  for (const Integer& n : ns) {
    const Rational alpha_q = alpha_of.at(n);
    const Rational eps_q = eps_of.at(n);
    if (alpha_q <= 0 || eps_q <= 0) {
      raise(ErrorCode::DomainError, "alpha and eps must be positive at n = " + n.get_str());
    }
    const long double alpha = to_double(alpha_q);
    const long double T = to_double(Rational(eps_q / alpha_q));
    const auto g = [&](long double t) {
      const long double v = f(static_cast<double>(a_real + alpha * t));
      if (std::isnan(static_cast<double>(v))) {
        raise(ErrorCode::DomainError, render(F) + " is undefined inside the window at n = " + n.get_str());
      }
      return v / (1 + t * t);
    };

    // Composite Simpson on [-T, T]; each doubling keeps the old points as the even nodes.
    unsigned long intervals = kMinIntervals;
    const long double ends = g(-T) + g(T);
    long double even = 0;
    long double odd = 0;
    for (unsigned long i = 1; i < intervals; ++i) (i % 2 ? odd : even) += g(-T + 2 * T * i / intervals);
    long double estimate = 0;
    bool converged = false;
    for (;;) {
      const long double h = 2 * T / intervals;
      const long double s = h / 3 * (ends + 4 * odd + 2 * even);
      if (intervals > kMinIntervals && std::fabs(s - estimate) <= kAgreement) {
        estimate = s;
        converged = true;
        break;
      }
      estimate = s;
      if (intervals >= kMaxIntervals) break;
      even += odd;
      odd = 0;
      intervals *= 2;
      for (unsigned long i = 1; i < intervals; i += 2) odd += g(-T + 2 * T * i / intervals);
    }
    if (!converged) {
      raise(ErrorCode::QuadratureNonconvergent,
            "Simpson estimates at n = " + n.get_str() + " did not settle within " + std::to_string(kMaxIntervals) +
                " intervals");
    }
    const long double value = estimate / 2;
    out.table.push_back({n, value, std::fabs(value - target), intervals});
  }

  if (out.table.size() < 2) {
    append_note(out, "a trend needs at least two values of n");
    return out;
  }
  bool decreasing = true;
  for (size_t i = 1; i < out.table.size(); ++i) decreasing = decreasing && out.table[i].error < out.table[i - 1].error;
  const bool small = out.table.back().error <= to_double(out.tolerance);
  out.status = decreasing && small ? VerdictStatus::decided : VerdictStatus::undecided_horizon;
  if (!decreasing) append_note(out, "errors do not decrease");
  else if (!small) append_note(out, "last error exceeds 2/n");
  return out;
}

}  // namespace ie
