#include "ie/transcendental.hpp"

#include <mpfr.h>

#include <cmath>
#include <string>

#include "ie/error.hpp"

namespace ie {

namespace {

class Float {
 public:
  explicit Float(mpfr_prec_t bits) { mpfr_init2(value_, bits); }
  ~Float() { mpfr_clear(value_); }
  Float(const Float&) = delete;
  Float& operator=(const Float&) = delete;

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }

 private:
  mpfr_t value_;
};

mpfr_prec_t working_bits(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 32;
}

Rational to_rational(const Float& f) {
  if (mpfr_zero_p(f.get())) return Rational(0);
  Integer mantissa;
  const mpfr_exp_t e = mpfr_get_z_2exp(mantissa.get_mpz_t(), f.get());
  Rational r(mantissa);
  return r * pow2(e);
}

void set_rational(Float& f, const Rational& q, mpfr_rnd_t rnd) {
  mpfr_set_q(f.get(), q.get_mpq_t(), rnd);
}

// Bound on the rounding error of a correctly rounded result.
Rational rounding_error(const Float& f, mpfr_prec_t bits) {
  if (mpfr_zero_p(f.get())) return pow2(-static_cast<long>(bits));
  return pow2(static_cast<long>(mpfr_get_exp(f.get())) - static_cast<long>(bits) + 1);
}

bool is_square(const Integer& z) { return z >= 0 && mpz_perfect_square_p(z.get_mpz_t()) != 0; }

}  // namespace

std::optional<Function> function_from_name(std::string_view name) {
  if (name == "sin") return Function::sin;
  if (name == "cos") return Function::cos;
  if (name == "exp") return Function::exp;
  if (name == "ln") return Function::ln;
  if (name == "sqrt") return Function::sqrt;
  if (name == "abs") return Function::abs;
  if (name == "atan") return Function::atan;
  return std::nullopt;
}

std::string_view function_name(Function f) {
  switch (f) {
    case Function::sin: return "sin";
    case Function::cos: return "cos";
    case Function::exp: return "exp";
    case Function::ln: return "ln";
    case Function::sqrt: return "sqrt";
    case Function::abs: return "abs";
    case Function::atan: return "atan";
  }
  return "?";
}

Coefficient pi(int digits) {
  const mpfr_prec_t bits = working_bits(digits);
  Float p(bits);
  mpfr_const_pi(p.get(), MPFR_RNDN);
  return Coefficient::approx(to_rational(p), pow2(2 - static_cast<long>(bits)));
}

Coefficient eval_function(Function f, const Coefficient& x, int digits) {
  const Rational& v = x.value();

  if (f == Function::abs) {
    if (x.exact()) return Coefficient(abs(v));
    return Coefficient::approx(abs(v), x.error());
  }

  if (f == Function::ln || f == Function::sqrt) {
    const bool is_ln = f == Function::ln;
    const Rational hi = v + x.error();
    const Rational lo = v - x.error();
    if (is_ln ? hi <= 0 : hi < 0) {
      raise(ErrorCode::DomainError,
            std::string(function_name(f)) + " at " + to_string(x) + " is outside the domain");
    }
    if (!is_ln && x.is_exact_zero()) return Coefficient(0);
    if (lo <= 0) {
      raise(ErrorCode::PrecisionUndecided, std::string(function_name(f)) + " argument " +
                                               to_string(x) + " may touch the domain boundary");
    }
  }

  if (x.exact()) {
    if (v == 0) {
      if (f == Function::sin || f == Function::atan) return Coefficient(0);
      if (f == Function::cos || f == Function::exp) return Coefficient(1);
    }
    if (f == Function::ln && v == 1) return Coefficient(0);
    if (f == Function::sqrt && is_square(v.get_num()) && is_square(v.get_den())) {
      return Coefficient(Rational(sqrt(v.get_num()), sqrt(v.get_den())));
    }
  }

  const mpfr_prec_t bits = working_bits(digits);
  Float arg(bits);
  set_rational(arg, v, MPFR_RNDN);
  // Uncertainty of the argument: its own error plus the conversion rounding.
  const Rational input_error = x.error() + abs(v) * pow2(-static_cast<long>(bits));

  Float out(bits);
  switch (f) {
    case Function::sin: mpfr_sin(out.get(), arg.get(), MPFR_RNDN); break;
    case Function::cos: mpfr_cos(out.get(), arg.get(), MPFR_RNDN); break;
    case Function::exp: mpfr_exp(out.get(), arg.get(), MPFR_RNDN); break;
    case Function::ln: mpfr_log(out.get(), arg.get(), MPFR_RNDN); break;
    case Function::sqrt: mpfr_sqrt(out.get(), arg.get(), MPFR_RNDN); break;
    case Function::atan: mpfr_atan(out.get(), arg.get(), MPFR_RNDN); break;
    case Function::abs: break;
  }

  // Lipschitz bound of f on [v - input_error, v + input_error].
  Rational lipschitz(1);
  switch (f) {
    case Function::sin:
    case Function::cos:
    case Function::atan:
    case Function::abs:
      break;
    case Function::exp: {
      Float upper(bits);
      set_rational(upper, v + input_error, MPFR_RNDU);
      mpfr_exp(upper.get(), upper.get(), MPFR_RNDU);
      lipschitz = to_rational(upper);
      break;
    }
    case Function::ln: {
      const Rational lo = v - input_error;
      if (lo <= 0) raise(ErrorCode::PrecisionUndecided, "ln argument too close to zero");
      lipschitz = 1 / lo;
      break;
    }
    case Function::sqrt: {
      const Rational lo = v - input_error;
      if (lo <= 0) raise(ErrorCode::PrecisionUndecided, "sqrt argument too close to zero");
      Float root(bits);
      set_rational(root, lo, MPFR_RNDD);
      mpfr_sqrt(root.get(), root.get(), MPFR_RNDD);
      lipschitz = 1 / (2 * to_rational(root));
      break;
    }
  }

  return Coefficient::approx(to_rational(out), rounding_error(out, bits) + lipschitz * input_error);
}

}  // namespace ie
