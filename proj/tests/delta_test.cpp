#include <gtest/gtest.h>

#include <cmath>

#include "ie/delta.hpp"
#include "ie/error.hpp"
#include "ie/transcendental.hpp"
#include "oracles.hpp"

namespace ie {
namespace {

const Config cfg;
const HyperSeries eps = HyperSeries::epsilon();
const HyperSeries H = HyperSeries::unlimited();

HyperSeries c(const Rational& q) { return HyperSeries::constant(Coefficient(q)); }

bool near(const Coefficient& x, long double want, long double tol) {
  return std::fabs(static_cast<long double>(to_double(x.value())) - want) <= tol + to_double(x.error());
}

const long double kHalfPi = std::atan(1.0L) * 2;

std::vector<Integer> decades() { return {10, 100, 1000}; }

TEST(DeltaWeight, Examples) {
  const HyperSeries w = delta_weight(eps * eps, eps, cfg);
  EXPECT_TRUE(near(standard_part(w), kHalfPi, 1e-15L));
  // Against the closed form: atan(H) = π/2 - ε + ε³/3 - ...
  EXPECT_TRUE(w.coefficient(1).contains(-1));
  EXPECT_TRUE(w.coefficient(3).contains(Rational(1, 3)));

  const HyperSeries quarter = delta_weight(eps, eps, cfg);
  EXPECT_EQ(classify(quarter), Classification::appreciable);
  EXPECT_TRUE(near(standard_part(quarter), std::atan(1.0L), 1e-15L));
  EXPECT_FALSE(near(standard_part(quarter), kHalfPi, 0.5L));

  const HyperSeries three = delta_weight(eps, c(3) * eps, cfg);
  EXPECT_TRUE(near(standard_part(three), std::atan(3.0L), 1e-15L));
}

TEST(DeltaWeight, MatchesAtanOfTheRatio) {
  for (const auto& [alpha, e] : std::vector<std::pair<HyperSeries, HyperSeries>>{
           {eps * eps, eps}, {eps * eps * eps, eps}, {c(2) * eps * eps, eps + eps * eps}, {eps, c(5) * eps}}) {
    EvalContext ctx;
    ctx.series.emplace("x", e / alpha);
    const HyperSeries direct = eval_series(parse("atan(x)"), ctx);
    const HyperSeries w = delta_weight(alpha, e, cfg);
    EXPECT_EQ(to_string(w), to_string(direct));
  }
}

TEST(DeltaSymbolic, ConstantIsHalfPi) {
  const HyperSeries s = delta_symbolic(parse("1"), 0, eps * eps, eps, cfg);
  EXPECT_TRUE(near(standard_part(s), kHalfPi, 1e-15L));
  EXPECT_EQ(classify(s - HyperSeries::constant(pi(cfg.precision) / Coefficient(2))), Classification::infinitesimal);
}

TEST(DeltaSymbolic, TargetLawForConstants) {
  for (const Rational& k : {Rational(1), Rational(-3), Rational(7, 2)}) {
    const HyperSeries s = delta_symbolic(parse(to_string(k)), 0, eps * eps, eps, cfg);
    const HyperSeries want = c(k) * delta_weight(eps * eps, eps, cfg);
    EXPECT_EQ(to_string(s), to_string(want)) << to_string(k);
  }
}

TEST(DeltaSymbolic, ZeroAndExp) {
  EXPECT_TRUE(delta_symbolic(parse("0"), 0, eps * eps, eps, cfg).is_zero());
  const HyperSeries s = delta_symbolic(parse("exp(x)"), 0, eps * eps, eps, cfg);
  EXPECT_TRUE(near(standard_part(s), kHalfPi, 1e-15L));
  const HyperSeries shifted = delta_symbolic(parse("exp(x)"), 1, eps * eps, eps, cfg);
  EXPECT_TRUE(near(standard_part(shifted), kHalfPi * std::exp(1.0L), 1e-14L));
}

TEST(DeltaSymbolic, HypothesisViolations) {
  const auto code = [](const HyperSeries& alpha, const HyperSeries& e) {
    try {
      (void)delta_symbolic(parse("1"), 0, alpha, e, cfg);
    } catch (const Error& err) {
      return err.code();
    }
    return ErrorCode::InvalidArgument;
  };
  EXPECT_EQ(code(eps, eps), ErrorCode::HypothesisViolation);
  EXPECT_EQ(code(eps, c(3) * eps), ErrorCode::HypothesisViolation);
  EXPECT_EQ(code(-eps * eps, eps), ErrorCode::HypothesisViolation);
  EXPECT_EQ(code(eps * eps, c(1)), ErrorCode::HypothesisViolation);
}

TEST(DeltaProbe, UnitImpulseIsAtanN) {
  const DeltaResult r = delta_probe(parse("1"), 0, parse("1/n^2"), parse("1/n"), decades(), cfg);
  ASSERT_EQ(r.table.size(), 3u);
  for (const auto& row : r.table) {
    const long double n = to_double(Rational(row.n));
    EXPECT_NEAR(static_cast<double>(row.value), static_cast<double>(std::atan(n)), 1e-10);
    EXPECT_LE(row.error, 1.1L / n);
  }
  EXPECT_NEAR(static_cast<double>(r.table[1].error), 0.0100, 1e-4);
  EXPECT_EQ(r.status, VerdictStatus::decided);
  ASSERT_TRUE(r.symbolic.has_value());
  EXPECT_TRUE(near(standard_part(*r.symbolic), kHalfPi, 1e-15L));
}

TEST(DeltaProbe, ErrorsDecreaseForLargerN) {
  std::vector<Integer> ns;
  for (int n = 10; n <= 5000; n = n * 3 / 2) ns.push_back(n);
  const DeltaResult r = delta_probe(parse("1"), 0, parse("1/n^2"), parse("1/n"), ns, cfg);
  for (size_t i = 1; i < r.table.size(); ++i) EXPECT_LT(r.table[i].error, r.table[i - 1].error);
  for (const auto& row : r.table) EXPECT_LE(row.error, 1.1L / to_double(Rational(row.n)));
}

TEST(DeltaProbe, Exp) {
  const DeltaResult r = delta_probe(parse("exp(x)"), 0, parse("1/n^2"), parse("1/n"), decades(), cfg);
  EXPECT_EQ(r.status, VerdictStatus::decided);
  EXPECT_LT(r.table[1].error, r.table[0].error);
  EXPECT_LT(r.table[2].error, r.table[1].error);
  EXPECT_LE(r.table[2].error, 2e-3L);
}

TEST(DeltaProbe, CosineAgainstIndependentQuadrature) {
  const DeltaResult r = delta_probe(parse("cos(x)"), 0, parse("1/n^2"), parse("1/n"), decades(), cfg);
  for (const auto& row : r.table) {
    const long double n = to_double(Rational(row.n));
    const long double alpha = 1 / (n * n);
    // Directly in μ, fine enough to resolve the peak of width alpha.
    const long double direct =
        oracle::simpson([&](long double mu) { return std::cos(mu) * alpha / (alpha * alpha + mu * mu); }, -1 / n,
                        1 / n, 1UL << 22) /
        2;
    EXPECT_NEAR(static_cast<double>(row.value), static_cast<double>(direct), 1e-6);
  }
  EXPECT_EQ(r.status, VerdictStatus::decided);
}

TEST(DeltaProbe, SymmetricPairsAgree) {
  const std::vector<std::pair<const char*, const char*>> pairs = {
      {"x^3 + x", "(2 - x)^3 + (2 - x)"}, {"exp(x)", "exp(2 - x)"}, {"sin(x)", "sin(2 - x)"}};
  for (const auto& [f, g] : pairs) {
    const DeltaResult a = delta_probe(parse(f), 1, parse("1/n^2"), parse("1/n"), decades(), cfg);
    const DeltaResult b = delta_probe(parse(g), 1, parse("1/n^2"), parse("1/n"), decades(), cfg);
    for (size_t i = 0; i < a.table.size(); ++i) EXPECT_NEAR(double(a.table[i].value), double(b.table[i].value), 1e-9) << f;
  }
}

TEST(DeltaProbe, EqualScalesHaveNoSymbolicValue) {
  const DeltaResult r = delta_probe(parse("1"), 0, parse("1/n"), parse("1/n"), decades(), cfg);
  EXPECT_FALSE(r.symbolic.has_value());
  EXPECT_NE(r.note.find("HypothesisViolation"), std::string::npos);
  EXPECT_NE(r.status, VerdictStatus::decided);
  for (const auto& row : r.table) EXPECT_NEAR(double(row.value), double(std::atan(1.0L)), 1e-10);
}

TEST(DeltaProbe, SingleNIsUndecided) {
  const DeltaResult r = delta_probe(parse("1"), 0, parse("1/n^2"), parse("1/n"), {10}, cfg);
  EXPECT_EQ(r.status, VerdictStatus::undecided_horizon);
  EXPECT_EQ(r.table.size(), 1u);
}

TEST(DeltaProbe, BadArguments) {
  EXPECT_THROW(delta_probe(parse("1"), 0, parse("1/n^2"), parse("1/n"), {}, cfg), Error);
  EXPECT_THROW(delta_probe(parse("1"), 0, parse("1/n^2"), parse("1/n"), {100, 10}, cfg), Error);
  EXPECT_THROW(delta_probe(parse("ln(x)"), 0, parse("1/n^2"), parse("1/n"), decades(), cfg), Error);
}

}  // namespace
}  // namespace ie
