#include "ie/roots.hpp"

#include "ie/error.hpp"

namespace ie {

int sign_at(const Expr& f, const Rational& q, int precision) {
  const std::string var = function_variable(f);
  int p = precision;
  for (int attempt = 0; attempt < 4; ++attempt, p *= 2) {
    try {
      const Coefficient c = eval_scalar(f, {{var, Coefficient(q)}}, p);
      if (c.exact()) return ie::sign(c.value());
      if (!c.possibly_zero()) return c.sign();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PrecisionUndecided) throw;
    }
  }
  raise(ErrorCode::SignUndecidable, "sign of " + render(f) + " at " + to_string(q) + " is not resolved at " +
                                        std::to_string(p / 2) + " digits");
}

Bracket make_bracket(const Expr& f, const Rational& lo, const Rational& hi, int precision) {
  if (!(lo < hi)) raise(ErrorCode::InvalidArgument, "bracket needs lo < hi");
  Bracket b{lo, hi, sign_at(f, lo, precision), sign_at(f, hi, precision)};
  if (b.sign_lo * b.sign_hi > 0) {
    raise(ErrorCode::NoSignChange, render(f) + " has the same sign at " + to_string(lo) + " and " + to_string(hi));
  }
  return b;
}

namespace {

void check_bracket(const Bracket& b) {
  if (!(b.lo < b.hi)) raise(ErrorCode::InvalidArgument, "bracket needs lo < hi");
  if (b.sign_lo * b.sign_hi > 0) raise(ErrorCode::NoSignChange, "bracket ends have the same sign");
}

}  // namespace

DigitExpansion stevin_digits(const Expr& f, const Bracket& b, int k, int precision) {
  if (k < 1) raise(ErrorCode::InvalidArgument, "need at least one digit");
  check_bracket(b);
  DigitExpansion out;
  const Rational width0 = b.width();
  // Places settled when the bracket width is width0 / 10^k.
  const auto settled = [&](int rounds) {
    int places = 0;
    Rational w = width0 / pow10(rounds);
    while (w < 1 && places < rounds + 64) {
      w *= 10;
      ++places;
    }
    return places;
  };
  const auto finish = [&](const Rational& at) {
    out.sign = at < 0 ? -1 : 1;
    out.integer_part = floor(abs(at));
    return out;
  };

  if (b.sign_lo == 0 || b.sign_hi == 0) {
    out.exact_hit = b.sign_lo == 0 ? b.lo : b.hi;
    out.places = settled(k);
    return finish(*out.exact_hit);
  }

  // The current bracket is [lo0 + N u, lo0 + (N+1) u] with u = width0 / 10^round.
  Integer cell = 0;
  Integer scale = 1;
  int sign_left = b.sign_lo;
  for (int round = 1; round <= k; ++round) {
    scale *= 10;
    const Rational unit = width0 / Rational(scale);
    int digit = 9;
    int sign_right = 0;
    bool found = false;
    for (int i = 1; i <= 9; ++i) {
      const Rational point = b.lo + unit * Rational(cell * 10 + i);
      const int s = sign_at(f, point, precision);
      if (s == 0) {
        out.digits.push_back(i);
        out.exact_hit = point;
        out.places = settled(k);
        return finish(point);
      }
      if (s != sign_left) {
        digit = i - 1;
        sign_right = s;
        found = true;
        break;
      }
    }
    if (!found) {
      // Only the last cell remains; its right end is the previous right end.
      sign_right = round == 1 ? b.sign_hi : out.brackets.back().sign_hi;
      if (sign_right == sign_left) {
        raise(ErrorCode::NoSignChange, "no sign change among the ten cells of round " + std::to_string(round));
      }
    }
    cell = cell * 10 + digit;
    out.digits.push_back(digit);
    const Rational lo = b.lo + unit * Rational(cell);
    out.brackets.push_back({lo, lo + unit, sign_left, sign_right});
  }
  out.places = settled(k);
  return finish(out.brackets.back().lo);
}

std::string DigitExpansion::decimal() const {
  const Rational value = exact_hit ? *exact_hit : brackets.back().lo;
  return to_decimal_floor(value, places);
}

IvtResult cauchy_ivt(const Expr& f, const Bracket& b, int m, int iters, int precision) {
  if (m < 2) raise(ErrorCode::InvalidArgument, "m must be at least 2");
  if (iters < 0) raise(ErrorCode::InvalidArgument, "iteration count must be nonnegative");
  check_bracket(b);
  IvtResult out;
  out.brackets.push_back(b);
  if (b.sign_lo == 0 || b.sign_hi == 0) {
    out.exact_hit = b.sign_lo == 0 ? b.lo : b.hi;
    return out;
  }
  Bracket current = b;
  for (int round = 0; round < iters; ++round) {
    const Rational step = current.width() / m;
    Rational left = current.lo;
    int sign_left = current.sign_lo;
    bool chosen = false;
    for (int i = 1; i < m; ++i) {
      const Rational right = current.lo + step * i;
      const int s = sign_at(f, right, precision);
      if (s == 0) {
        out.exact_hit = right;
        return out;
      }
      if (s != sign_left) {
        current = {left, right, sign_left, s};
        chosen = true;
        break;
      }
      left = right;
    }
    if (!chosen) {
      if (current.sign_hi == sign_left) raise(ErrorCode::NoSignChange, "no sign change among the subintervals");
      current = {left, current.hi, sign_left, current.sign_hi};
    }
    out.brackets.push_back(current);
  }
  return out;
}

}  // namespace ie
