#include <gtest/gtest.h>

#include <random>
#include <atomic>
#include <thread>

#include "ie/error.hpp"
#include "ie/expr.hpp"
#include "ie/stream.hpp"
#include "oracles.hpp"

namespace ie {
namespace {

const Integer kHorizon = 10000;
const Rational kTol(1, 100000000);

HyperStream seq(const std::string& spec) { return parse_stream(spec); }

void expect_same(const HyperStream& a, const HyperStream& b, unsigned long upto = 200) {
  for (unsigned long n = 1; n <= upto; ++n) ASSERT_EQ(a.at(n), b.at(n)) << "n = " << n;
}

TEST(Stream, PointwiseArithmetic) {
  expect_same(s_add(streams::constant(1), streams::reciprocal()), seq("1 + 1/n"));
  expect_same(s_mul(streams::reciprocal(), streams::identity()), streams::constant(1));
  expect_same(s_neg(streams::alternating_reciprocal()), seq("(-1)^(n+1)/n"));
  expect_same(s_sub(streams::square(), streams::identity()), seq("n^2 - n"));
}

TEST(Stream, BuiltinsMatchTheirFormulas) {
  expect_same(streams::shifted(7), seq("n+7"));
  expect_same(streams::power_of_two(), seq("2^n"), 64);
  expect_same(streams::alternating_reciprocal(), seq("(-1)^n/n"));
  expect_same(seq("const:3/4"), streams::constant(Rational(3, 4)));
}

TEST(Stream, Schedule) {
  const std::vector<Integer> expected = {1, 2, 3, 4, 7, 8, 11, 12, 15, 16};
  EXPECT_EQ(sampling_schedule(16), expected);
  const auto big = sampling_schedule(kHorizon);
  EXPECT_EQ(big.back(), kHorizon);
  EXPECT_TRUE(std::is_sorted(big.begin(), big.end()));
}

TEST(Stream, CompareExamples) {
  const auto a = s_compare(streams::reciprocal(), streams::constant(0), kHorizon);
  ASSERT_TRUE(a.decided());
  EXPECT_EQ(*a.value, Ordering::greater);

  const auto b = s_compare(streams::alternating_reciprocal(), streams::constant(0), kHorizon);
  EXPECT_EQ(b.status, VerdictStatus::undecided_ultrafilter);
  EXPECT_GE(b.evidence.size(), 4u);

  const auto c = s_compare(streams::constant(Rational(5, 3)), streams::constant(Rational(5, 3)), kHorizon);
  ASSERT_TRUE(c.decided());
  EXPECT_EQ(*c.value, Ordering::equal);

  EXPECT_THROW((void)s_compare(streams::reciprocal(), streams::constant(0), 15), Error);
}

TEST(Stream, CompareReportsFirstStableIndex) {
  // 1/n - 1/20 changes sign after n = 20.
  const auto v = s_compare(seq("1/n - 1/20"), streams::constant(0), kHorizon);
  ASSERT_TRUE(v.decided());
  EXPECT_EQ(*v.value, Ordering::less);
  ASSERT_FALSE(v.evidence.empty());
  EXPECT_GT(v.evidence.front(), 20);
  EXPECT_LE(v.evidence.front(), 32);
}

TEST(Stream, StandardPartExamples) {
  const auto a = s_standard_part(seq("1 - 10^(-n)"), kHorizon, kTol);
  ASSERT_TRUE(a.decided());
  EXPECT_TRUE(a.value->contains(1));
  EXPECT_EQ(a.value->radius, kTol);

  EXPECT_EQ(s_standard_part(streams::identity(), kHorizon, kTol).status, VerdictStatus::undecided_horizon);

  const HyperSeries x = HyperSeries::constant(Coefficient(3)) + HyperSeries::constant(Coefficient(2)) * HyperSeries::epsilon();
  const auto c = s_standard_part(embed(x), kHorizon, kTol);
  ASSERT_TRUE(c.decided());
  EXPECT_LE(abs(Rational(c.value->value - 3)), 2 * kTol);

  EXPECT_FALSE(s_standard_part(seq("(-1)^n"), kHorizon, kTol).decided());
  EXPECT_FALSE(s_standard_part(seq("ln(n)"), kHorizon, kTol).decided());
}

TEST(Stream, EmbedExamples) {
  expect_same(embed(HyperSeries::epsilon()), streams::reciprocal());
  expect_same(embed(HyperSeries()), streams::constant(0));
  expect_same(embed(HyperSeries::unlimited()), streams::identity());
  const HyperSeries approx = HyperSeries::constant(Coefficient::approx(Rational(1, 3), Rational(1, 1000000)));
  try {
    (void)embed(approx);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonExactCoefficient);
  }
}

TEST(Stream, ExtendAtExamples) {
  const HyperStream r = seq("(n+1)/n");
  expect_same(extend_at(r, HyperNat::identity()), r);
  expect_same(extend_at(r, HyperNat::square()), seq("(n^2+1)/n^2"));
  expect_same(extend_at(r, HyperNat::constant(5)), streams::constant(r.at(5UL)));
}

TEST(Stream, EmbeddingPreservesOrder) {
  std::mt19937_64 rng(31);
  int decided = 0;
  for (int i = 0; i < 150; ++i) {
    const HyperSeries x = oracle::to_series(oracle::random_laurent(rng, -2, 3), 8);
    const HyperSeries y = oracle::to_series(oracle::random_laurent(rng, -2, 3), 8);
    const auto v = s_compare(embed(x), embed(y), kHorizon);
    if (!v.decided()) continue;
    ++decided;
    EXPECT_EQ(*v.value, compare(x, y)) << to_string(x) << " vs " << to_string(y);
  }
  EXPECT_GT(decided, 140);
}

TEST(Stream, EmbeddingPreservesStandardPart) {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 100; ++i) {
    const HyperSeries x = oracle::to_series(oracle::random_laurent(rng, 0, 4), 8);
    const auto v = s_standard_part(embed(x), kHorizon, kTol);
    ASSERT_TRUE(v.decided()) << to_string(x);
    EXPECT_LE(abs(Rational(v.value->value - standard_part(x).value())), 2 * kTol) << to_string(x);
  }
}

// n ↦ floor(√2 · 10^n) / 10^n
HyperStream sqrt2_truncations() {
  return HyperStream(
      [](const Integer& n) {
        const Integer scale = Integer(pow10(n.get_si()));
        Integer root;
        const Integer target = 2 * scale * scale;
        mpz_sqrt(root.get_mpz_t(), target.get_mpz_t());
        return Rational(root, scale);
      },
      "sqrt2 truncations");
}

TEST(Stream, RationalTruncationsOfAnIrrational) {
  const HyperStream s = sqrt2_truncations();
  const auto st = s_standard_part(s, kHorizon, kTol);
  ASSERT_TRUE(st.decided());
  EXPECT_TRUE(st.value->contains(parse_rational("1.41421356237")));
  for (const char* c : {"1.41421356", "1.4142135623730951", "99/70", "665857/470832", "1.41421356237309504880168872"}) {
    const auto v = s_compare(s, streams::constant(parse_rational(c)), kHorizon);
    EXPECT_FALSE(v.decided() && *v.value == Ordering::equal) << c;
  }
}

TEST(Stream, LargerHorizonNeverFlipsAnOrder) {
  const char* corpus[] = {"1/n",       "-1/n",      "1/n - 1/100", "n - 50",       "(n+1)/n - 1",
                          "1/n^2 - 1/(3*n)", "2^n - n^3", "10^(-n)",  "sin(n)/n^2 + 1/n", "(-1)^n/n^2 + 1/n"};
  for (const char* spec : corpus) {
    const HyperStream s = seq(spec);
    const auto small = s_compare(s, streams::constant(0), 1000);
    const auto large = s_compare(s, streams::constant(0), kHorizon);
    if (small.decided() && large.decided()) {
      EXPECT_EQ(*small.value, *large.value) << spec;
    }
    if (small.decided()) {
      EXPECT_TRUE(large.decided()) << spec;
    }
  }
}

TEST(Stream, ErrorsAreCachedPerIndex) {
  const HyperStream s = seq("1/(n-3)");
  EXPECT_EQ(s.at(4UL), 1);
  for (int i = 0; i < 2; ++i) {
    try {
      (void)s.at(3UL);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::DomainError);
    }
  }
  EXPECT_EQ(s.at(5UL), Rational(1, 2));
}

TEST(Stream, GeneratorRunsOncePerIndex) {
  auto calls = std::make_shared<std::atomic<int>>(0);
  const HyperStream s([calls](const Integer& n) { ++*calls; return Rational(n); }, "counted");
  for (int i = 0; i < 5; ++i) (void)s.at(10UL);
  EXPECT_EQ(calls->load(), 1);
}

TEST(Stream, SharedAcrossThreads) {
  const HyperStream s = seq("(n^2 + 1)/(2*n)");
  std::vector<std::thread> threads;
  std::atomic<int> mismatches = 0;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&] {
      for (unsigned long n = 1; n <= 500; ++n) {
        if (s.at(n) != make_rational(Integer(n * n + 1), Integer(2 * n))) ++mismatches;
      }
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(mismatches.load(), 0);
}

TEST(Stream, BudgetLimitsTheEffectiveHorizon) {
  const HyperStream sums = partial_sum_stream(parse("1/k^2"), 50, 1UL << 10);
  EXPECT_EQ(effective_horizon(sums, 100000), Integer(1 << 10));
  const HyperStream powers = extend_at(streams::identity(), HyperNat::power_of_two());
  EXPECT_EQ(effective_horizon(powers, Integer(kMaxPowerBits) * 2), Integer(kMaxPowerBits));
}

}  // namespace
}  // namespace ie
