#include "ie/calculus.hpp"

#include <algorithm>
#include <cctype>

#include "ie/error.hpp"

namespace ie {

namespace {

EvalContext context_for(const Config& cfg) {
  EvalContext ctx;
  ctx.precision = cfg.precision;
  ctx.window = cfg.window;
  return ctx;
}

HyperSeries apply(const Expr& f, const std::string& var, const HyperSeries& x, const Config& cfg) {
  EvalContext ctx = context_for(cfg);
  ctx.series.emplace(var, x);
  return eval_series(f, ctx);
}

HyperSeries constant(const Rational& r, const Config& cfg) { return HyperSeries::constant(Coefficient(r), cfg.window); }

bool is_standard(const HyperSeries& x) {
  return x.is_zero() || (x.terminates() && x.valuation() == 0 && x.terms().size() == 1);
}

bool infinitesimal_or_zero(Classification c) {
  return c == Classification::zero || c == Classification::infinitesimal;
}

ProbeResult probe(const Expr& f, const std::string& var, std::string label, const HyperSeries& x,
                  const HyperSeries& fx, const HyperSeries& y, const Config& cfg) {
  ProbeResult p{std::move(label), x, y, fx, apply(f, var, y, cfg), {}, Classification::zero};
  p.gap = p.fy - p.fx;
  p.gap_class = classify(p.gap);
  return p;
}

// Bound on |st f'| at y from the forward (or backward) difference quotient.
std::optional<Rational> slope_bound(const Expr& f, const std::string& var, const HyperSeries& y,
                                    const Config& cfg, const std::optional<Domain>& domain) {
  const HyperSeries eps = HyperSeries::epsilon(cfg.window);
  const HyperSeries h = HyperSeries::unlimited(cfg.window);
  const bool forward = !domain || domain->contains(y + eps);
  if (!forward && !domain->contains(y - eps)) return std::nullopt;
  try {
    const HyperSeries fy = apply(f, var, y, cfg);
    const HyperSeries q = forward ? (apply(f, var, y + eps, cfg) - fy) * h : (fy - apply(f, var, y - eps, cfg)) * h;
    if (!is_limited(q)) return std::nullopt;
    return standard_part(q).magnitude_bound();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DomainError || e.code() == ErrorCode::PrecisionUndecided ||
        e.code() == ErrorCode::WindowCollapse) {
      return std::nullopt;
    }
    throw;
  }
}

}  // namespace

// ---- Domain ----------------------------------------------------------------

Domain Domain::closed(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) raise(ErrorCode::InvalidArgument, "interval needs lo < hi");
  return {lo, hi, true, true};
}

Domain Domain::open(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) raise(ErrorCode::InvalidArgument, "interval needs lo < hi");
  return {lo, hi, false, false};
}

Domain Domain::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s == "R" || s == "(-inf,inf)") return whole_line();
  const auto bad = [&] { raise(ErrorCode::InvalidArgument, "cannot read domain '" + std::string(text) + "'"); };
  if (s.size() < 5) bad();
  const char open_c = s.front();
  const char close_c = s.back();
  if ((open_c != '[' && open_c != '(') || (close_c != ']' && close_c != ')')) bad();
  const auto comma = s.find(',');
  if (comma == std::string::npos) bad();
  const std::string lo_text = s.substr(1, comma - 1);
  const std::string hi_text = s.substr(comma + 1, s.size() - comma - 2);
  Domain d;
  d.lo_closed = open_c == '[';
  d.hi_closed = close_c == ']';
  if (lo_text != "-inf") d.lo = parse_rational(lo_text);
  else if (d.lo_closed) bad();
  if (hi_text != "inf" && hi_text != "+inf") d.hi = parse_rational(hi_text);
  else if (d.hi_closed) bad();
  if (d.lo && d.hi && !(*d.lo < *d.hi)) raise(ErrorCode::InvalidArgument, "interval needs lo < hi");
  return d;
}

bool Domain::contains(const HyperSeries& x) const {
  const int w = x.window();
  if (lo) {
    const Ordering o = compare(x, HyperSeries::constant(Coefficient(*lo), w));
    if (o == Ordering::less || (o == Ordering::equal && !lo_closed)) return false;
  }
  if (hi) {
    const Ordering o = compare(x, HyperSeries::constant(Coefficient(*hi), w));
    if (o == Ordering::greater || (o == Ordering::equal && !hi_closed)) return false;
  }
  return true;
}

std::string Domain::to_string() const {
  if (!lo && !hi) return "R";
  return std::string(lo_closed ? "[" : "(") + (lo ? ie::to_string(*lo) : "-inf") + "," +
         (hi ? ie::to_string(*hi) : "inf") + (hi_closed ? "]" : ")");
}

// ---- derivative and limit --------------------------------------------------

Coefficient derivative(const Expr& f, const HyperSeries& a, const Config& cfg) {
  const std::string var = function_variable(f);
  const HyperSeries fa = apply(f, var, a, cfg);
  const HyperSeries fb = apply(f, var, a + HyperSeries::epsilon(cfg.window), cfg);
  const HyperSeries quotient = (fb - fa) * HyperSeries::unlimited(cfg.window);
  if (!is_limited(quotient)) {
    raise(ErrorCode::UnlimitedHasNoStandardPart,
          "difference quotient of " + render(f) + " is unlimited: " + to_string(quotient));
  }
  return standard_part(quotient);
}

LimitReport limit(const HyperStream& r, const Config& cfg) {
  const std::pair<std::string, HyperNat> indices[] = {
      {"n", HyperNat::identity()},
      {"n^2", HyperNat::square()},
      {"n+7", HyperNat::shifted(7)},
      {"2^n", HyperNat::power_of_two()},
  };
  LimitReport report;
  for (const auto& [name, index] : indices) {
    report.battery.emplace_back(name, s_standard_part(extend_at(r, index), cfg.horizon, cfg.tol));
  }

  using V = Verdict<ApproxReal>;
  for (const auto& [name, v] : report.battery) {
    if (v.status == VerdictStatus::undecided_ultrafilter) {
      report.verdict = V::undecided(v.status, v.evidence, v.horizon, "no stable value along K = " + name);
      return report;
    }
  }
  for (const auto& [name, v] : report.battery) {
    if (!v.decided()) {
      report.verdict = V::undecided(v.status, v.evidence, v.horizon, "no stable value along K = " + name);
      return report;
    }
  }
  for (size_t i = 0; i < report.battery.size(); ++i) {
    for (size_t j = i + 1; j < report.battery.size(); ++j) {
      const Rational gap = abs(Rational(report.battery[i].second.value->value - report.battery[j].second.value->value));
      if (gap > 2 * cfg.tol) {
        report.verdict = V::undecided(VerdictStatus::undecided_horizon, {}, cfg.horizon,
                                      "K = " + report.battery[i].first + " and K = " + report.battery[j].first +
                                          " disagree by " + to_decimal(gap, 12));
        return report;
      }
    }
  }
  const auto& first = report.battery.front().second;
  report.verdict = V::decide(*first.value, first.evidence, first.horizon, "all indices agree");
  return report;
}

// ---- continuity ------------------------------------------------------------

bool ProbeResult::passed() const { return infinitesimal_or_zero(gap_class); }

PointReport continuous_at(const Expr& f, const Rational& a, const Config& cfg) {
  const std::string var = function_variable(f);
  const HyperSeries x = constant(a, cfg);
  const HyperSeries fx = apply(f, var, x, cfg);
  const HyperSeries eps = HyperSeries::epsilon(cfg.window);
  const std::pair<std::string, HyperSeries> increments[] = {
      {"a+eps", eps}, {"a-eps", -eps}, {"a+eps^2", eps * eps}, {"a+3*eps", eps * HyperSeries::constant(3, cfg.window)}};

  PointReport report;
  for (const auto& [label, delta] : increments) {
    try {
      report.probes.push_back(probe(f, var, label, x, fx, x + delta, cfg));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DomainError) throw;
      report.skipped.push_back(label);
      continue;
    }
    if (!report.probes.back().passed() && !report.witness) report.witness = report.probes.back();
  }
  if (report.witness) {
    report.status = VerdictStatus::decided;
    report.holds = false;
  } else if (report.probes.empty()) {
    report.note = "f is undefined at every probe";
  } else {
    report.status = VerdictStatus::decided;
    report.holds = true;
  }
  return report;
}

PointReport microcontinuous_at(const Expr& f, const HyperSeries& x, const Config& cfg,
                               const std::optional<Domain>& domain) {
  const std::string var = function_variable(f);
  const HyperSeries fx = apply(f, var, x, cfg);
  const HyperSeries eps = HyperSeries::epsilon(cfg.window);
  std::vector<std::pair<std::string, HyperSeries>> candidates = {
      {"x+eps", x + eps}, {"x-eps", x - eps}, {"x+eps^2", x + eps * eps}};
  if (classify(x) == Classification::unlimited) candidates.emplace_back("x+1/x", x + inverse(x));

  PointReport report;
  std::optional<ProbeResult> first_failure;
  for (const auto& [label, y] : candidates) {
    if (domain && !domain->contains(y)) {
      report.skipped.push_back(label);
      continue;
    }
    try {
      report.probes.push_back(probe(f, var, label, x, fx, y, cfg));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DomainError) throw;
      report.skipped.push_back(label);
      continue;
    }
    const ProbeResult& p = report.probes.back();
    if (p.passed()) continue;
    if (!first_failure) first_failure = p;
    if (!report.witness && p.gap_class == Classification::appreciable) report.witness = p;
  }
  if (!report.witness) report.witness = first_failure;
  if (report.witness) {
    report.status = VerdictStatus::decided;
    report.holds = false;
    return report;
  }
  if (report.probes.empty()) {
    report.note = "no probe could be evaluated";
    return report;
  }

  // Certificate: the difference quotient is limited at x and at every probe.
  std::optional<Rational> bound = slope_bound(f, var, x, cfg, domain);
  for (const auto& p : report.probes) {
    if (!bound) break;
    const auto b = slope_bound(f, var, p.y, cfg, domain);
    bound = b ? std::optional<Rational>(std::max(*bound, *b)) : std::nullopt;
  }
  if (!bound) {
    report.note = "all probes pass but the difference quotient is not limited";
    return report;
  }
  report.status = VerdictStatus::decided;
  report.holds = true;
  report.certificate = bound;
  return report;
}

std::string_view to_string(UCVerdict v) {
  switch (v) {
    case UCVerdict::uc: return "UC";
    case UCVerdict::not_uc: return "NOT_UC";
    case UCVerdict::undecided: return "Undecided";
  }
  return "?";
}

namespace {

std::vector<HyperSeries> battery_for(const Domain& d, int w) {
  std::vector<Rational> standard;
  if (d.lo && d.hi) {
    if (d.lo_closed) standard.push_back(*d.lo);
    const Rational width = *d.hi - *d.lo;
    for (int q = 1; q <= 3; ++q) standard.push_back(*d.lo + width * Rational(q, 4));
    if (d.hi_closed) standard.push_back(*d.hi);
  } else if (d.lo) {
    if (d.lo_closed) standard.push_back(*d.lo);
    for (int k : {1, 2, 4}) standard.push_back(*d.lo + k);
  } else if (d.hi) {
    for (int k : {4, 2, 1}) standard.push_back(*d.hi - k);
    if (d.hi_closed) standard.push_back(*d.hi);
  } else {
    standard = {Rational(-1), Rational(0), Rational(1)};
  }

  std::vector<HyperSeries> points;
  for (const auto& r : standard) points.push_back(HyperSeries::constant(Coefficient(r), w));
  if (!d.hi) points.push_back(HyperSeries::unlimited(w));
  if (!d.lo) points.push_back(-HyperSeries::unlimited(w));
  if (d.lo && !d.lo_closed) points.push_back(HyperSeries::constant(Coefficient(*d.lo), w) + HyperSeries::epsilon(w));
  if (d.hi && !d.hi_closed) points.push_back(HyperSeries::constant(Coefficient(*d.hi), w) - HyperSeries::epsilon(w));
  return points;
}

}  // namespace

UCReport uniformly_continuous(const Expr& f, const Domain& d, const Config& cfg) {
  UCReport report;
  report.battery = battery_for(d, cfg.window);
  std::optional<Rational> bound = Rational(0);
  for (const auto& x : report.battery) {
    try {
      report.points.push_back(microcontinuous_at(f, x, cfg, d));
    } catch (const Error& e) {
      // A nonstandard point where f has no Laurent expansion leaves the battery incomplete.
      if (e.code() != ErrorCode::DomainError || is_standard(x)) throw;
      PointReport skipped;
      skipped.note = e.what();
      report.points.push_back(std::move(skipped));
    }
    const PointReport& p = report.points.back();
    if (p.status == VerdictStatus::decided && !p.holds) {
      report.verdict = UCVerdict::not_uc;
      report.witness = p.witness;
      const HyperSeries delta = p.witness->y - p.witness->x;
      const HyperSeries gap = p.witness->fy - p.witness->fx;
      report.witness_revalidated = infinitesimal_or_zero(classify(delta)) && !delta.is_zero() &&
                                   !infinitesimal_or_zero(classify(gap));
      return report;
    }
    if (p.certificate && bound) bound = std::max(*bound, *p.certificate);
    else bound.reset();
  }
  if (bound) {
    report.verdict = UCVerdict::uc;
    report.certificate = bound;
  } else {
    report.note = "every probe passes but no slope certificate covers the battery";
  }
  return report;
}

UniformConvergenceReport uniform_convergence_probe(const Expr& s, const Expr& f, const Config& cfg,
                                                   const std::optional<HyperStream>& rule) {
  const Expr remainder = s - f;
  const std::string var = function_variable(remainder);
  EvalContext ctx = context_for(cfg);
  ctx.streams.emplace(var, rule ? *rule : streams::reciprocal());
  UniformConvergenceReport report;
  report.remainder = limit(eval_stream(remainder, ctx), cfg);
  const auto& v = report.remainder.verdict;
  report.status = v.status;
  if (v.decided()) report.holds = abs(v.value->value) <= cfg.tol;
  return report;
}

}  // namespace ie
