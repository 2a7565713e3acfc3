#include "ie/cli.hpp"

#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ie/calculus.hpp"
#include "ie/delta.hpp"
#include "ie/error.hpp"
#include "ie/roots.hpp"

namespace ie::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUndecided = 2;

// What a command hands back: text lines, the JSON payload, and whether the
// result is undecided.
struct Outcome {
  std::vector<std::string> lines;
  Json result = Json::object();
  bool undecided = false;
};

// ---- formatting ------------------------------------------------------------

std::string str(std::string_view s) { return std::string(s); }

// Decimal with enough places to show `radius`, trailing zeros dropped.
std::string approx_text(const Rational& value, const Rational& radius) {
  int places = 0;
  Rational scaled = radius;
  while (scaled < 1 && places < 60) {
    scaled *= 10;
    ++places;
  }
  std::string s = to_decimal(value, places);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

std::string approx_text(const ApproxReal& r) { return approx_text(r.value, r.radius); }

Json coefficient_json(const Coefficient& c) {
  return Json{{"value", to_string(c.value())}, {"error", to_string(c.error())}, {"exact", c.exact()}};
}

Json series_json(const HyperSeries& x) {
  Json terms = Json::array();
  for (size_t i = 0; i < x.terms().size(); ++i) {
    Json t = coefficient_json(x.terms()[i]);
    t["exponent"] = x.valuation() + static_cast<int>(i);
    terms.push_back(std::move(t));
  }
  Json j{{"text", to_string(x)},
         {"classification", str(to_string(classify(x)))},
         {"valuation", x.is_zero() ? Json(nullptr) : Json(x.valuation())},
         {"window", x.window()},
         {"truncation_order", x.truncation_order() ? Json(*x.truncation_order()) : Json(nullptr)},
         {"terms", terms}};
  return j;
}

Json approx_json(const ApproxReal& r) {
  return Json{{"value", to_string(r.value)}, {"radius", to_string(r.radius)}, {"decimal", approx_text(r)}};
}

template <class T, class F>
Json verdict_json(const Verdict<T>& v, F value_json) {
  Json evidence = Json::array();
  for (const auto& e : v.evidence) evidence.push_back(e.get_str());
  return Json{{"status", str(to_string(v.status))},
              {"value", v.value ? value_json(*v.value) : Json(nullptr)},
              {"evidence", evidence},
              {"horizon", v.horizon.get_str()},
              {"note", v.note}};
}

std::string verdict_text(const Verdict<ApproxReal>& v) {
  std::string s = str(to_string(v.status));
  if (v.value) s += " " + approx_text(*v.value);
  if (!v.note.empty()) s += " (" + v.note + ")";
  return s;
}

std::string probe_text(const ProbeResult& p) {
  return "x = " + to_string(p.x) + ", y = " + to_string(p.y) + ", f(y) - f(x) = " + to_string(p.gap) + " (" +
         str(to_string(p.gap_class)) + ")";
}

Json probe_json(const ProbeResult& p) {
  return Json{{"probe", p.label},         {"x", to_string(p.x)},     {"y", to_string(p.y)},
              {"fx", to_string(p.fx)},    {"fy", to_string(p.fy)},   {"gap", to_string(p.gap)},
              {"gap_class", str(to_string(p.gap_class))}};
}

Json point_json(const PointReport& r) {
  Json probes = Json::array();
  for (const auto& p : r.probes) probes.push_back(probe_json(p));
  return Json{{"status", str(to_string(r.status))},
              {"holds", r.status == VerdictStatus::decided ? Json(r.holds) : Json(nullptr)},
              {"witness", r.witness ? probe_json(*r.witness) : Json(nullptr)},
              {"certificate", r.certificate ? Json(to_string(*r.certificate)) : Json(nullptr)},
              {"probes", probes},
              {"skipped", r.skipped},
              {"note", r.note}};
}

Json bracket_json(const Bracket& b) {
  return Json{{"lo", to_string(b.lo)}, {"hi", to_string(b.hi)}, {"sign_lo", b.sign_lo}, {"sign_hi", b.sign_hi}};
}

std::string bracket_text(const Bracket& b, int places) {
  return "[" + to_string(b.lo) + ", " + to_string(b.hi) + "]  [" + to_decimal(b.lo, places) + ", " +
         to_decimal(b.hi, places) + "]";
}

Json limit_json(const LimitReport& r) {
  Json battery = Json::array();
  for (const auto& [name, v] : r.battery) {
    Json entry = verdict_json(v, approx_json);
    entry["index"] = name;
    battery.push_back(std::move(entry));
  }
  return Json{{"verdict", verdict_json(r.verdict, approx_json)}, {"battery", battery}};
}

void limit_lines(const LimitReport& r, std::vector<std::string>& lines) {
  for (const auto& [name, v] : r.battery) lines.push_back("K = " + name + ": " + verdict_text(v));
}

// ---- argument readers ------------------------------------------------------

HyperSeries read_value(const std::string& text, const Config& cfg) {
  EvalContext ctx;
  ctx.precision = cfg.precision;
  ctx.window = cfg.window;
  return eval_series(parse(text), ctx);
}

Rational read_exact(const std::string& text, const Config& cfg) {
  const Coefficient c = eval_scalar(parse(text), {}, cfg.precision);
  if (!c.exact()) raise(ErrorCode::NonExactCoefficient, "'" + text + "' is not an exact rational");
  return c.value();
}

std::pair<Rational, Rational> read_pair(const std::string& text, const Config& cfg) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) raise(ErrorCode::InvalidArgument, "expected lo,hi but got '" + text + "'");
  return {read_exact(text.substr(0, comma), cfg), read_exact(text.substr(comma + 1), cfg)};
}

std::vector<Integer> read_naturals(const std::string& text) {
  std::vector<Integer> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Integer n;
    if (n.set_str(item, 10) != 0 || n < 1) raise(ErrorCode::InvalidArgument, "'" + item + "' is not a positive integer");
    out.push_back(n);
  }
  if (out.empty()) raise(ErrorCode::InvalidArgument, "empty list of n");
  return out;
}

EvalContext context(const Config& cfg) {
  EvalContext ctx;
  ctx.precision = cfg.precision;
  ctx.window = cfg.window;
  return ctx;
}

// ---- commands --------------------------------------------------------------

struct Options {
  std::string expr;
  std::string other;
  std::vector<std::string> at;
  std::string point;
  std::string domain;
  std::string sum;
  std::string limit_expr;
  std::string rule = "1/n";
  std::string bracket;
  int digits = 6;
  int m = 2;
  int iters = 20;
  std::string alpha = "1/n^2";
  std::string eps = "1/n";
  std::string ns = "10,100,1000";
};

Outcome cmd_eval(const Options& o, const Config& cfg) {
  const Expr e = parse(o.expr);
  EvalContext ctx = context(cfg);
  for (const auto& binding : o.at) {
    const auto eq = binding.find('=');
    if (eq == std::string::npos || eq == 0) raise(ErrorCode::InvalidArgument, "expected var=value but got '" + binding + "'");
    ctx.series.insert_or_assign(binding.substr(0, eq), read_value(binding.substr(eq + 1), cfg));
  }
  const HyperSeries v = eval_series(e, ctx);
  Outcome out;
  out.lines.push_back(to_string(v));
  out.result = {{"expr", render(e)}, {"value", series_json(v)}};
  return out;
}

Outcome cmd_st(const Options& o, const Config& cfg) {
  const HyperSeries v = read_value(o.expr, cfg);
  const Coefficient s = standard_part(v);
  Outcome out;
  out.lines.push_back(to_string(s));
  out.result = {{"value", series_json(v)}, {"standard_part", coefficient_json(s)}};
  return out;
}

Outcome cmd_classify(const Options& o, const Config& cfg) {
  const HyperSeries v = read_value(o.expr, cfg);
  Outcome out;
  out.lines.push_back(str(to_string(classify(v))));
  out.result = {{"value", series_json(v)}, {"classification", str(to_string(classify(v)))}};
  return out;
}

Outcome cmd_deriv(const Options& o, const Config& cfg) {
  const Expr f = parse(o.expr);
  const HyperSeries a = read_value(o.point, cfg);
  const Coefficient d = derivative(f, a, cfg);
  Outcome out;
  out.lines.push_back(to_string(d));
  out.result = {{"expr", render(f)}, {"at", to_string(a)}, {"derivative", coefficient_json(d)}};
  return out;
}

Outcome cmd_limit(const Options& o, const Config& cfg) {
  const HyperStream r = parse_stream(o.expr, cfg.precision);
  const LimitReport report = limit(r, cfg);
  Outcome out;
  limit_lines(report, out.lines);
  out.lines.push_back("limit: " + verdict_text(report.verdict));
  out.result = limit_json(report);
  out.result["stream"] = r.label();
  out.undecided = !report.verdict.decided();
  return out;
}

Outcome cmd_compare(const Options& o, const Config& cfg) {
  const HyperStream x = parse_stream(o.expr, cfg.precision);
  const HyperStream y = parse_stream(o.other, cfg.precision);
  const Verdict<Ordering> v = s_compare(x, y, cfg.horizon);
  Outcome out;
  std::string line = str(to_string(v.status));
  if (v.value) line += " " + str(to_string(*v.value));
  if (!v.note.empty()) line += " (" + v.note + ")";
  out.lines.push_back("compare: " + line);
  out.result = verdict_json(v, [](Ordering r) { return Json(str(to_string(r))); });
  out.result["x"] = x.label();
  out.result["y"] = y.label();
  out.undecided = !v.decided();
  return out;
}

Outcome cmd_cont(const Options& o, const Config& cfg) {
  const Expr f = parse(o.expr);
  const Rational a = read_exact(o.point, cfg);
  const PointReport r = continuous_at(f, a, cfg);
  Outcome out;
  if (r.status != VerdictStatus::decided) {
    out.lines.push_back(str(to_string(r.status)) + ": " + r.note);
    out.undecided = true;
  } else {
    out.lines.push_back(r.holds ? "continuous" : "discontinuous");
    if (r.witness) out.lines.push_back("witness: " + probe_text(*r.witness));
  }
  out.result = point_json(r);
  out.result["expr"] = render(f);
  out.result["at"] = to_string(a);
  return out;
}

Outcome cmd_ucont(const Options& o, const Config& cfg) {
  const Expr f = parse(o.expr);
  const Domain d = Domain::parse(o.domain);
  const UCReport r = uniformly_continuous(f, d, cfg);
  Outcome out;
  out.lines.push_back("verdict: " + str(to_string(r.verdict)));
  if (r.witness) {
    out.lines.push_back("witness: " + probe_text(*r.witness));
    out.lines.push_back(std::string("revalidated: ") + (r.witness_revalidated ? "yes" : "no"));
  }
  if (r.certificate) out.lines.push_back("certificate: |f'| <= " + to_string(*r.certificate));
  if (!r.note.empty()) out.lines.push_back("note: " + r.note);
  Json battery = Json::array();
  for (const auto& x : r.battery) battery.push_back(to_string(x));
  Json points = Json::array();
  for (const auto& p : r.points) points.push_back(point_json(p));
  out.result = {{"expr", render(f)},
                {"domain", d.to_string()},
                {"verdict", str(to_string(r.verdict))},
                {"witness", r.witness ? probe_json(*r.witness) : Json(nullptr)},
                {"witness_revalidated", r.witness_revalidated},
                {"certificate", r.certificate ? Json(to_string(*r.certificate)) : Json(nullptr)},
                {"battery", battery},
                {"points", points},
                {"note", r.note}};
  out.undecided = r.verdict == UCVerdict::undecided;
  return out;
}

Outcome cmd_uconv(const Options& o, const Config& cfg) {
  const Expr s = parse(o.sum);
  const Expr f = parse(o.limit_expr);
  const HyperStream rule = parse_stream(o.rule, cfg.precision);
  const UniformConvergenceReport r = uniform_convergence_probe(s, f, cfg, rule);
  Outcome out;
  limit_lines(r.remainder, out.lines);
  out.lines.push_back("remainder limit: " + verdict_text(r.remainder.verdict));
  if (r.status == VerdictStatus::decided) {
    out.lines.push_back(std::string("condition: ") + (r.holds ? "holds" : "fails"));
  } else {
    out.lines.push_back("condition: " + str(to_string(r.status)));
  }
  out.result = {{"sum", render(s)},
                {"limit", render(f)},
                {"rule", rule.label()},
                {"status", str(to_string(r.status))},
                {"holds", r.status == VerdictStatus::decided ? Json(r.holds) : Json(nullptr)},
                {"remainder", limit_json(r.remainder)}};
  out.undecided = r.status != VerdictStatus::decided;
  return out;
}

Outcome cmd_stevin(const Options& o, const Config& cfg) {
  const Expr f = parse(o.expr);
  const auto [lo, hi] = read_pair(o.bracket, cfg);
  const DigitExpansion d = stevin_digits(f, make_bracket(f, lo, hi, cfg.precision), o.digits, cfg.precision);
  Outcome out;
  Json brackets = Json::array();
  for (size_t i = 0; i < d.brackets.size(); ++i) {
    out.lines.push_back("digit " + std::to_string(d.digits[i]) + "  " + bracket_text(d.brackets[i], d.places));
    brackets.push_back(bracket_json(d.brackets[i]));
  }
  if (d.exact_hit) {
    out.lines.push_back("digit " + std::to_string(d.digits.back()) + "  exact hit at " + to_string(*d.exact_hit));
    out.lines.push_back(to_string(*d.exact_hit) + " (exact)");
  } else {
    out.lines.push_back(d.decimal());
  }
  out.result = {{"expr", render(f)},
                {"sign", d.sign},
                {"integer_part", d.integer_part.get_str()},
                {"digits", d.digits},
                {"decimal", d.decimal()},
                {"exact_hit", d.exact_hit ? Json(to_string(*d.exact_hit)) : Json(nullptr)},
                {"brackets", brackets}};
  return out;
}

Outcome cmd_ivt(const Options& o, const Config& cfg) {
  const Expr f = parse(o.expr);
  const auto [lo, hi] = read_pair(o.bracket, cfg);
  const IvtResult r = cauchy_ivt(f, make_bracket(f, lo, hi, cfg.precision), o.m, o.iters, cfg.precision);
  Outcome out;
  Json brackets = Json::array();
  int places = 0;
  for (Rational w = r.final_bracket().width(); w < 1 && places < 60; w *= 10) ++places;
  for (size_t i = 0; i < r.brackets.size(); ++i) {
    out.lines.push_back(std::to_string(i) + "  " + bracket_text(r.brackets[i], places));
    brackets.push_back(bracket_json(r.brackets[i]));
  }
  if (r.exact_hit) out.lines.push_back(to_string(*r.exact_hit) + " (exact)");
  out.result = {{"expr", render(f)},
                {"m", o.m},
                {"iters", o.iters},
                {"final", bracket_json(r.final_bracket())},
                {"exact_hit", r.exact_hit ? Json(to_string(*r.exact_hit)) : Json(nullptr)},
                {"brackets", brackets}};
  return out;
}

std::string long_double_text(long double v) {
  std::ostringstream s;
  s.precision(15);
  s << static_cast<double>(v);
  return s.str();
}

Outcome cmd_delta(const Options& o, const Config& cfg) {
  const Expr F = parse(o.expr);
  const Rational a = read_exact(o.point, cfg);
  const DeltaResult r = delta_probe(F, a, parse(o.alpha), parse(o.eps), read_naturals(o.ns), cfg);
  Outcome out;
  Json table = Json::array();
  for (const auto& row : r.table) {
    out.lines.push_back("n = " + row.n.get_str() + "  I_n = " + long_double_text(row.value) +
                        "  error = " + long_double_text(row.error));
    table.push_back({{"n", row.n.get_str()},
                     {"value", static_cast<double>(row.value)},
                     {"error", static_cast<double>(row.error)},
                     {"intervals", row.intervals}});
  }
  out.lines.push_back("target: " + to_string(r.target));
  if (r.symbolic) {
    out.lines.push_back("symbolic: " + to_string(*r.symbolic));
    out.lines.push_back("symbolic standard part: " + to_string(standard_part(*r.symbolic)));
  }
  out.lines.push_back("verdict: " + str(to_string(r.status)) + (r.note.empty() ? "" : " (" + r.note + ")"));
  out.result = {{"expr", render(F)},
                {"at", to_string(a)},
                {"alpha", o.alpha},
                {"eps", o.eps},
                {"target", coefficient_json(r.target)},
                {"symbolic", r.symbolic ? series_json(*r.symbolic) : Json(nullptr)},
                {"table", table},
                {"tolerance", to_string(r.tolerance)},
                {"status", str(to_string(r.status))},
                {"note", r.note}};
  out.undecided = r.status != VerdictStatus::decided;
  return out;
}

Json config_json(const Config& cfg) {
  return Json{{"window", cfg.window},
              {"precision", cfg.precision},
              {"horizon", cfg.horizon.get_str()},
              {"tol", to_string(cfg.tol)}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and sequence-level hyperreal arithmetic, standard-part calculus and root extraction"};
  app.name("ie");
  app.require_subcommand(1);

  Config cfg;
  std::string horizon_text = cfg.horizon.get_str();
  std::string tol_text = "1/100000000";
  std::string output = "plain";
  bool json_flag = false;
  app.add_option("--window", cfg.window, "series window W")->envname("IE_WINDOW");
  app.add_option("--precision", cfg.precision, "decimal digits for transcendental values")->envname("IE_PRECISION");
  app.add_option("--horizon", horizon_text, "largest stream index sampled")->envname("IE_HORIZON");
  app.add_option("--tol", tol_text, "agreement tolerance for standard parts")->envname("IE_TOL");
  app.add_option("--output", output, "plain or json")->check(CLI::IsMember({"plain", "json"}));
  app.add_flag("--json", json_flag, "same as --output json");

  Options o;
  using Handler = Outcome (*)(const Options&, const Config&);
  std::vector<std::pair<CLI::App*, Handler>> commands;
  const auto sub = [&](const char* name, const char* help, Handler h) {
    CLI::App* s = app.add_subcommand(name, help);
    commands.emplace_back(s, h);
    return s;
  };

  auto* eval = sub("eval", "evaluate an expression at exact hyperreal values", cmd_eval);
  eval->add_option("expr", o.expr)->required();
  eval->add_option("--at", o.at, "binding var=value (repeatable)");

  sub("st", "standard part of a limited value", cmd_st)->add_option("value", o.expr)->required();
  sub("classify", "zero, infinitesimal, appreciable or unlimited", cmd_classify)->add_option("value", o.expr)->required();

  auto* deriv = sub("deriv", "st of the difference quotient", cmd_deriv);
  deriv->add_option("expr", o.expr)->required();
  deriv->add_option("--at", o.point)->required();

  sub("limit", "limit of a stream along unlimited indices", cmd_limit)->add_option("stream", o.expr)->required();

  auto* compare = sub("compare", "order of two streams along the ultrafilter", cmd_compare);
  compare->add_option("x", o.expr)->required();
  compare->add_option("y", o.other)->required();

  auto* cont = sub("cont", "continuity at a rational point", cmd_cont);
  cont->add_option("expr", o.expr)->required();
  cont->add_option("--at", o.point)->required();

  auto* ucont = sub("ucont", "uniform continuity on a domain", cmd_ucont);
  ucont->add_option("expr", o.expr)->required();
  ucont->add_option("--domain", o.domain)->required();

  auto* uconv = sub("uconv", "remainder test for uniform convergence", cmd_uconv);
  uconv->add_option("--sum", o.sum)->required();
  uconv->add_option("--limit", o.limit_expr)->required();
  uconv->add_option("--rule", o.rule, "stream x_n");

  auto* stevin = sub("stevin", "decimal digits of a root by tenfold subdivision", cmd_stevin);
  stevin->add_option("expr", o.expr)->required();
  stevin->add_option("--bracket", o.bracket, "lo,hi")->required();
  stevin->add_option("--digits", o.digits)->check(CLI::PositiveNumber);

  auto* ivt = sub("ivt", "nested brackets by m-fold subdivision", cmd_ivt);
  ivt->add_option("expr", o.expr)->required();
  ivt->add_option("--bracket", o.bracket, "lo,hi")->required();
  ivt->add_option("-m", o.m)->check(CLI::Range(2, 1 << 20));
  ivt->add_option("--iters", o.iters)->check(CLI::NonNegativeNumber);

  auto* delta = sub("delta", "delta kernel half-integral", cmd_delta);
  delta->add_option("expr", o.expr)->required();
  delta->add_option("--at", o.point)->required();
  delta->add_option("--alpha", o.alpha, "rule in n");
  delta->add_option("--eps", o.eps, "rule in n");
  delta->add_option("--ns", o.ns, "comma-separated n values");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitError;
  }

  const bool as_json = json_flag || output == "json";
  std::string command;
  Handler handler = nullptr;
  for (const auto& [s, h] : commands) {
    if (s->parsed()) {
      command = s->get_name();
      handler = h;
    }
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (cfg.horizon.set_str(horizon_text, 10) != 0) raise(ErrorCode::InvalidArgument, "bad horizon '" + horizon_text + "'");
    cfg.tol = parse_rational(tol_text);
    cfg.validate();
    Outcome result = handler(o, cfg);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (as_json) {
      Json report{{"schema", 1},
                  {"command", command},
                  {"args", args},
                  {"config", config_json(cfg)},
                  {"status", result.undecided ? "undecided" : "ok"},
                  {"result", result.result},
                  {"timing_ms", ms}};
      out << report.dump(2) << '\n';
    } else {
      for (const auto& line : result.lines) out << line << '\n';
    }
    return result.undecided ? kExitUndecided : kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    if (as_json) {
      Json report{{"schema", 1},
                  {"command", command},
                  {"args", args},
                  {"config", config_json(cfg)},
                  {"status", "error"},
                  {"error", {{"name", str(e.name())}, {"message", e.detail()}}}};
      out << report.dump(2) << '\n';
    }
    return kExitError;
  }
}

}  // namespace ie::cli
