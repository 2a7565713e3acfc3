#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ie/calculus.hpp"
#include "ie/error.hpp"
#include "oracles.hpp"

namespace ie {
namespace {

const Config cfg;
const HyperSeries eps = HyperSeries::epsilon();
const HyperSeries H = HyperSeries::unlimited();

HyperSeries c(const Rational& q) { return HyperSeries::constant(Coefficient(q)); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidArgument;
}

TEST(Domain, ParsesIntervals) {
  EXPECT_EQ(Domain::parse("R").to_string(), "R");
  EXPECT_EQ(Domain::parse("[0, 1]").to_string(), "[0,1]");
  EXPECT_EQ(Domain::parse("(0,1)").to_string(), "(0,1)");
  EXPECT_EQ(Domain::parse("[-1/2,inf)").to_string(), "[-1/2,inf)");
  EXPECT_EQ(Domain::parse("(-inf,2]").to_string(), "(-inf,2]");
  EXPECT_THROW(Domain::parse("[1,0]"), Error);
  EXPECT_THROW(Domain::parse("[0,inf]"), Error);
  EXPECT_THROW(Domain::parse("0,1"), Error);
}

TEST(Domain, Membership) {
  const Domain open = Domain::open(0, 1);
  EXPECT_TRUE(open.contains(eps));
  EXPECT_FALSE(open.contains(HyperSeries()));
  EXPECT_FALSE(open.contains(-eps));
  EXPECT_TRUE(open.contains(c(1) - eps));
  EXPECT_FALSE(Domain::closed(0, 1).contains(c(1) + eps));
  EXPECT_TRUE(Domain::parse("[0,inf)").contains(H));
}

TEST(Derivative, Examples) {
  for (const Rational& a : {Rational(0), Rational(3), Rational(-7, 2)}) {
    EXPECT_EQ(derivative(parse("x^2"), c(a), cfg).value(), 2 * a);
    EXPECT_EQ(derivative(parse("5"), c(a), cfg).value(), 0);
  }
  EXPECT_EQ(derivative(parse("x^2"), c(3) + eps, cfg).value(), 6);
  EXPECT_EQ(code_of([] { (void)derivative(parse("1/x"), eps, cfg); }), ErrorCode::UnlimitedHasNoStandardPart);
}

TEST(Derivative, SineAtZeroAgainstFiniteDifferences) {
  const Coefficient d = derivative(parse("sin(x)"), HyperSeries(), cfg);
  const double h3 = oracle::richardson_derivative([](double x) { return std::sin(x); }, 0, 1e-3);
  const double h4 = oracle::richardson_derivative([](double x) { return std::sin(x); }, 0, 1e-4);
  EXPECT_NEAR(h3, h4, 1e-9);
  EXPECT_NEAR(to_double(d.value()), h4, 1e-9);
  EXPECT_TRUE(d.contains(1));
  EXPECT_LE(d.error(), pow10(-48));
}

TEST(Derivative, AgreesWithSymbolicDerivative) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> num(1, 40);
  const char* fs[] = {"x^3 - 2*x", "sin(x)*exp(x)", "ln(x^2 + 1)", "sqrt(x)/(1 + x)", "atan(2*x - 1)",
                      "cos(x)^3", "exp(-x^2/2)", "x*ln(x)"};
  for (const char* src : fs) {
    const Expr f = parse(src);
    const Expr df = symbolic_derivative(f, "x");
    for (int i = 0; i < 6; ++i) {
      const Rational a(num(rng), 9);
      const Coefficient got = derivative(f, c(a), cfg);
      const Coefficient want = eval_scalar(df, {{"x", Coefficient(a)}}, 50);
      EXPECT_LE(abs(Rational(got.value() - want.value())), pow10(-25)) << src << " at " << to_string(a);
    }
  }
}

TEST(Limit, ConvergentStream) {
  const LimitReport r = limit(parse_stream("(n+1)/n"), cfg);
  ASSERT_TRUE(r.verdict.decided());
  EXPECT_LE(abs(Rational(r.verdict.value->value - 1)), 2 * cfg.tol);
  ASSERT_EQ(r.battery.size(), 4u);
  for (const auto& [name, v] : r.battery) EXPECT_TRUE(v.decided()) << name;
}

TEST(Limit, EulerDecimals) {
  const HyperStream nines = s_add(streams::constant(9), parse_stream("partial_sum:9*10^(-k)"));
  const LimitReport r = limit(nines, cfg);
  ASSERT_TRUE(r.verdict.decided());
  EXPECT_LE(abs(Rational(r.verdict.value->value - 10)), 2 * cfg.tol);
}

TEST(Limit, OscillationIsUndecided) {
  const LimitReport r = limit(parse_stream("(-1)^n"), cfg);
  EXPECT_FALSE(r.verdict.decided());
  EXPECT_FALSE(limit(parse_stream("n"), cfg).verdict.decided());
}

TEST(Limit, BridgeToStandardPart) {
  for (const char* spec : {"(n+1)/n", "1 - 10^(-n)", "(2*n^2 - 1)/(n^2 + 3)", "sin(1/n) * n", "atan(n)"}) {
    const LimitReport r = limit(parse_stream(spec), cfg);
    if (!r.verdict.decided()) continue;
    const auto st = s_standard_part(extend_at(parse_stream(spec), HyperNat::square()), cfg.horizon, cfg.tol);
    ASSERT_TRUE(st.decided()) << spec;
    EXPECT_LE(abs(Rational(st.value->value - r.verdict.value->value)), 2 * cfg.tol) << spec;
  }
}

TEST(Continuity, Examples) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 10; ++i) {
    const PointReport r = continuous_at(parse("x^2"), oracle::random_rational(rng), cfg);
    EXPECT_EQ(r.status, VerdictStatus::decided);
    EXPECT_TRUE(r.holds);
  }
  EXPECT_EQ(code_of([] { (void)continuous_at(parse("1/x"), 0, cfg); }), ErrorCode::DomainError);
  const PointReport a = continuous_at(parse("abs(x)"), 0, cfg);
  EXPECT_TRUE(a.holds);
  EXPECT_EQ(a.status, VerdictStatus::decided);
}

TEST(Continuity, JumpIsDetected) {
  // atan(H x) climbs from -π/2 to π/2 inside the halo of 0.
  const PointReport jump = continuous_at(parse("atan(H*x)"), 0, cfg);
  EXPECT_EQ(jump.status, VerdictStatus::decided);
  EXPECT_FALSE(jump.holds);
  ASSERT_TRUE(jump.witness.has_value());
  EXPECT_EQ(jump.witness->label, "a+eps");
  EXPECT_EQ(jump.witness->gap_class, Classification::appreciable);
  EXPECT_TRUE(continuous_at(parse("atan(H*x)"), 1, cfg).holds);
}

TEST(Continuity, SkipsProbesOutsideTheDomain) {
  const PointReport r = continuous_at(parse("sqrt(x)"), 0, cfg);
  EXPECT_EQ(r.status, VerdictStatus::undecided_probe);
  EXPECT_EQ(r.skipped.size(), 4u);
  const PointReport l = continuous_at(parse("ln(x)"), 1, cfg);
  EXPECT_TRUE(l.holds);
}

TEST(Microcontinuity, Examples) {
  const PointReport sq = microcontinuous_at(parse("x^2"), H, cfg);
  EXPECT_EQ(sq.status, VerdictStatus::decided);
  EXPECT_FALSE(sq.holds);
  ASSERT_TRUE(sq.witness.has_value());
  EXPECT_EQ(sq.witness->y, H + inverse(H));
  EXPECT_TRUE(adequal(sq.witness->fy, H * H + c(2)));
  EXPECT_FALSE(adequal(sq.witness->fy, H * H));

  const PointReport inv = microcontinuous_at(parse("1/x"), eps, cfg);
  EXPECT_EQ(inv.status, VerdictStatus::decided);
  EXPECT_FALSE(inv.holds);

  const PointReport ok = microcontinuous_at(parse("x^2"), c(3) + eps, cfg);
  EXPECT_EQ(ok.status, VerdictStatus::decided);
  EXPECT_TRUE(ok.holds);
  ASSERT_TRUE(ok.certificate.has_value());
  EXPECT_EQ(*ok.certificate, 6);
}

TEST(Microcontinuity, PolynomialsAtLimitedPoints) {
  std::mt19937_64 rng(8);
  const char* polys[] = {"x^3 - x", "2*x^2 + x/3 - 1", "(x - 1)^4", "x^5/7"};
  for (const char* p : polys) {
    for (int i = 0; i < 10; ++i) {
      const HyperSeries x = oracle::to_series(oracle::random_laurent(rng, 0, 3, 3), 8);
      const PointReport r = microcontinuous_at(parse(p), x, cfg);
      EXPECT_EQ(r.status, VerdictStatus::decided) << p << " at " << to_string(x);
      EXPECT_TRUE(r.holds) << p << " at " << to_string(x);
      for (const auto& probe : r.probes) EXPECT_TRUE(probe.passed());
    }
  }
}

TEST(Microcontinuity, UnevaluableBasePointRaises) {
  EXPECT_EQ(code_of([] { (void)microcontinuous_at(parse("sqrt(x)"), eps, cfg, Domain::open(0, 1)); }),
            ErrorCode::DomainError);
}

TEST(Microcontinuity, ProbesRespectTheDomain) {
  const PointReport r = microcontinuous_at(parse("x^2"), c(1), cfg, Domain::closed(0, 1));
  EXPECT_EQ(r.status, VerdictStatus::decided);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.skipped, (std::vector<std::string>{"x+eps", "x+eps^2"}));
  EXPECT_EQ(*r.certificate, 2);
}

bool revalidates(const UCReport& r) {
  if (!r.witness) return false;
  const HyperSeries delta = r.witness->y - r.witness->x;
  const Classification d = classify(delta);
  const Classification g = classify(r.witness->fy - r.witness->fx);
  return d == Classification::infinitesimal && g != Classification::zero && g != Classification::infinitesimal;
}

TEST(UniformContinuity, SquareOnTheLine) {
  const UCReport r = uniformly_continuous(parse("x^2"), Domain::whole_line(), cfg);
  EXPECT_EQ(r.verdict, UCVerdict::not_uc);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->x, H);
  EXPECT_EQ(r.witness->y - r.witness->x, inverse(H));
  EXPECT_EQ(r.witness->gap_class, Classification::appreciable);
  EXPECT_TRUE(r.witness_revalidated);
  EXPECT_TRUE(revalidates(r));
}

TEST(UniformContinuity, ReciprocalOnTheOpenInterval) {
  const UCReport r = uniformly_continuous(parse("1/x"), Domain::open(0, 1), cfg);
  EXPECT_EQ(r.verdict, UCVerdict::not_uc);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->x, eps);
  EXPECT_EQ(r.witness->gap_class, Classification::appreciable);
  EXPECT_TRUE(r.witness_revalidated);
  EXPECT_TRUE(revalidates(r));
}

TEST(UniformContinuity, SquareOnTheUnitInterval) {
  const UCReport r = uniformly_continuous(parse("x^2"), Domain::closed(0, 1), cfg);
  EXPECT_EQ(r.verdict, UCVerdict::uc);
  ASSERT_TRUE(r.certificate.has_value());
  EXPECT_EQ(*r.certificate, 2);
  EXPECT_FALSE(r.witness.has_value());
}

TEST(UniformContinuity, MoreDomains) {
  EXPECT_EQ(uniformly_continuous(parse("sin(x)"), Domain::closed(-3, 3), cfg).verdict, UCVerdict::uc);
  EXPECT_EQ(uniformly_continuous(parse("1/x"), Domain::parse("[1,inf)"), cfg).verdict, UCVerdict::uc);
  EXPECT_EQ(uniformly_continuous(parse("x^3"), Domain::parse("[0,inf)"), cfg).verdict, UCVerdict::not_uc);
  // sqrt is uniformly continuous on (0,1) but its slope is unlimited near 0: no certificate.
  EXPECT_EQ(uniformly_continuous(parse("sqrt(x)"), Domain::open(0, 1), cfg).verdict, UCVerdict::undecided);
}

TEST(UniformContinuity, WitnessesStayInsideTheSubdomainBattery) {
  const Expr f = parse("1/x");
  for (const char* d : {"(0,1)", "(0,2]", "(0,inf)"}) {
    const Domain dom = Domain::parse(d);
    const UCReport r = uniformly_continuous(f, dom, cfg);
    if (r.verdict != UCVerdict::not_uc) continue;
    bool in_battery = false;
    for (const auto& x : r.battery) in_battery = in_battery || x == r.witness->x;
    EXPECT_TRUE(in_battery) << d;
    EXPECT_TRUE(dom.contains(r.witness->x) && dom.contains(r.witness->y)) << d;
  }
}

TEST(UniformConvergence, Examples) {
  const auto fails = uniform_convergence_probe(parse("n*x*exp(-n*x)"), parse("0"), cfg);
  EXPECT_EQ(fails.status, VerdictStatus::decided);
  EXPECT_FALSE(fails.holds);
  ASSERT_TRUE(fails.remainder.verdict.value.has_value());
  EXPECT_NEAR(to_double(fails.remainder.verdict.value->value), std::exp(-1.0), 1e-6);

  const auto holds = uniform_convergence_probe(parse("x + x/n"), parse("x"), cfg);
  EXPECT_EQ(holds.status, VerdictStatus::decided);
  EXPECT_TRUE(holds.holds);

  const auto same = uniform_convergence_probe(parse("sin(x)"), parse("sin(x)"), cfg);
  EXPECT_EQ(same.status, VerdictStatus::decided);
  EXPECT_TRUE(same.holds);
}

TEST(UniformConvergence, OtherRules) {
  const auto r = uniform_convergence_probe(parse("n*x*exp(-n*x)"), parse("0"), cfg, parse_stream("1/n^2"));
  EXPECT_EQ(r.status, VerdictStatus::decided);
  EXPECT_TRUE(r.holds);
}

}  // namespace
}  // namespace ie
