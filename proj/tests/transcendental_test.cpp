#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ie/error.hpp"
#include "ie/transcendental.hpp"

namespace ie {
namespace {

// π to 60 places.
const char* kPi = "3.141592653589793238462643383279502884197169399375105820974944";

TEST(Transcendental, PiMatchesKnownDigits) {
  const Coefficient p = pi(50);
  EXPECT_LE(p.error(), pow10(-50));
  EXPECT_TRUE(p.contains(parse_rational(kPi)));
}

TEST(Transcendental, ErrorBoundsTrackPrecision) {
  for (int digits : {10, 25, 50, 100}) {
    const Coefficient e = eval_function(Function::exp, Coefficient(1), digits);
    EXPECT_LE(e.error(), pow10(-digits));
  }
}

TEST(Transcendental, AgreesWithLongDouble) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> num(1, 400);
  for (int i = 0; i < 200; ++i) {
    const Rational x(num(rng), 100);
    const long double xv = to_double(x);
    const struct {
      Function f;
      long double expected;
    } cases[] = {{Function::sin, std::sin(xv)},   {Function::cos, std::cos(xv)},  {Function::exp, std::exp(xv)},
                 {Function::ln, std::log(xv)},    {Function::sqrt, std::sqrt(xv)}, {Function::atan, std::atan(xv)}};
    for (const auto& c : cases) {
      const Coefficient got = eval_function(c.f, Coefficient(x), 30);
      EXPECT_NEAR(static_cast<double>(to_double(got.value())), static_cast<double>(c.expected),
                  1e-12 * std::max(1.0, std::fabs(static_cast<double>(c.expected))))
          << function_name(c.f) << " at " << to_string(x);
    }
  }
}

TEST(Transcendental, ExactShortcuts) {
  EXPECT_TRUE(eval_function(Function::sin, Coefficient(0), 50).exact());
  EXPECT_EQ(eval_function(Function::cos, Coefficient(0), 50).value(), 1);
  EXPECT_EQ(eval_function(Function::exp, Coefficient(0), 50).value(), 1);
  EXPECT_EQ(eval_function(Function::ln, Coefficient(1), 50).value(), 0);
  const Coefficient r = eval_function(Function::sqrt, Coefficient(Rational(9, 4)), 50);
  EXPECT_TRUE(r.exact());
  EXPECT_EQ(r.value(), Rational(3, 2));
  EXPECT_EQ(eval_function(Function::abs, Coefficient(Rational(-2, 3)), 50).value(), Rational(2, 3));
}

TEST(Transcendental, ArgumentErrorPropagates) {
  const Coefficient x = Coefficient::approx(Rational(1), Rational(1, 1000));
  const Coefficient e = eval_function(Function::exp, x, 50);
  EXPECT_GE(e.error(), Rational(27, 10000));
  EXPECT_TRUE(e.contains(parse_rational("2.718281828459045235360287")));
}

TEST(Transcendental, DomainErrors) {
  for (const auto& [f, x] : {std::pair{Function::ln, Rational(0)}, std::pair{Function::ln, Rational(-1)},
                             std::pair{Function::sqrt, Rational(-1, 2)}}) {
    try {
      (void)eval_function(f, Coefficient(x), 50);
      FAIL() << function_name(f);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::DomainError);
    }
  }
}

TEST(Transcendental, NamesRoundTrip) {
  for (Function f : {Function::sin, Function::cos, Function::exp, Function::ln, Function::sqrt, Function::abs,
                     Function::atan}) {
    EXPECT_EQ(function_from_name(function_name(f)), f);
  }
  EXPECT_FALSE(function_from_name("tan").has_value());
}

}  // namespace
}  // namespace ie
