#include "ie/rational.hpp"

#include <cctype>
#include <cmath>

#include "ie/error.hpp"

namespace ie {

Rational pow10(long k) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k < 0 ? -k : k));
  if (k >= 0) return Rational(p);
  Rational q(Integer(1), p);
  return q;
}

Rational pow2(long k) {
  Integer p(1);
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(k < 0 ? -k : k));
  if (k >= 0) return Rational(p);
  return Rational(Integer(1), p);
}

Rational ipow(const Rational& base, long exp) {
  if (exp < 0) {
    if (base == 0) raise(ErrorCode::DivisionByZero, "zero raised to a negative power");
    Rational inv = 1 / base;
    return ipow(inv, -exp);
  }
  Integer num, den;
  const auto e = static_cast<unsigned long>(exp);
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

namespace {

std::string format_scaled(const Integer& scaled, int decimals) {
  Integer mag = abs(scaled);
  std::string digits = mag.get_str();
  if (decimals > 0) {
    if (digits.size() <= static_cast<size_t>(decimals)) {
      digits.insert(0, static_cast<size_t>(decimals) + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<size_t>(decimals), ".");
  }
  if (scaled < 0) digits.insert(0, "-");
  return digits;
}

}  // namespace

std::string to_decimal(const Rational& q, int decimals) {
  Rational scaled = q * pow10(decimals);
  Integer num = abs(scaled.get_num());
  Integer den = scaled.get_den();
  Integer quotient, remainder;
  mpz_fdiv_qr(quotient.get_mpz_t(), remainder.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (2 * remainder >= den) quotient += 1;
  if (q < 0) quotient = -quotient;
  return format_scaled(quotient, decimals);
}

std::string to_decimal_floor(const Rational& q, int decimals) {
  return format_scaled(floor(q * pow10(decimals)), decimals);
}

Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    raise(ErrorCode::SyntaxError, "not a rational number: '" + std::string(text) + "'");
  };
  size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  size_t end = text.size();
  while (end > i && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  std::string_view s = text.substr(i, end - i);
  if (s.empty()) return fail();

  bool negative = false;
  size_t pos = 0;
  if (s[pos] == '+' || s[pos] == '-') {
    negative = s[pos] == '-';
    ++pos;
  }
  auto read_digits = [&](std::string& out) {
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) out.push_back(s[pos++]);
    return pos > start;
  };

  std::string whole;
  std::string frac;
  bool has_whole = read_digits(whole);
  Rational value;
  if (pos < s.size() && s[pos] == '/') {
    ++pos;
    std::string den;
    if (!has_whole || !read_digits(den) || pos != s.size()) return fail();
    Integer d(den, 10);
    if (d == 0) raise(ErrorCode::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
    value = Rational(Integer(whole, 10), d);
    value.canonicalize();
  } else {
    bool has_frac = false;
    if (pos < s.size() && s[pos] == '.') {
      ++pos;
      has_frac = read_digits(frac);
    }
    if (!has_whole && !has_frac) return fail();
    long exponent = 0;
    if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
      ++pos;
      bool exp_negative = false;
      if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) exp_negative = s[pos++] == '-';
      std::string exp_digits;
      if (!read_digits(exp_digits) || exp_digits.size() > 6) return fail();
      exponent = std::stol(exp_digits) * (exp_negative ? -1 : 1);
    }
    if (pos != s.size()) return fail();
    std::string mantissa_digits = whole + frac;
    if (mantissa_digits.empty()) mantissa_digits = "0";
    Integer mantissa(mantissa_digits, 10);
    value = Rational(mantissa) * pow10(exponent - static_cast<long>(frac.size()));
  }
  return negative ? Rational(-value) : value;
}

long floor_log2(const Rational& q) {
  Integer num = abs(q.get_num());
  const Integer& den = q.get_den();
  long estimate = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
                  static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
  Rational a = abs(q);
  // 2^(estimate-1) < |q| < 2^(estimate+1)
  if (a >= pow2(estimate)) return estimate;
  return estimate - 1;
}

Rational round_to_dyadic(const Rational& q, long exp2) {
  Rational scaled = q / pow2(exp2);
  Integer num = abs(scaled.get_num());
  Integer quotient, remainder;
  mpz_fdiv_qr(quotient.get_mpz_t(), remainder.get_mpz_t(), num.get_mpz_t(),
              scaled.get_den_mpz_t());
  if (2 * remainder >= scaled.get_den()) quotient += 1;
  if (q < 0) quotient = -quotient;
  return Rational(quotient) * pow2(exp2);
}

Rational ceil_to_dyadic(const Rational& q, long exp2) {
  Rational scaled = q / pow2(exp2);
  Integer c;
  mpz_cdiv_q(c.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  return Rational(c) * pow2(exp2);
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace ie
