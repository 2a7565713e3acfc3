#include "ie/series.hpp"

#include <algorithm>

#include "ie/error.hpp"

namespace ie {

std::string_view to_string(Ordering o) {
  switch (o) {
    case Ordering::less: return "less";
    case Ordering::equal: return "equal";
    case Ordering::greater: return "greater";
  }
  return "?";
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::zero: return "zero";
    case Classification::infinitesimal: return "infinitesimal";
    case Classification::appreciable: return "appreciable";
    case Classification::unlimited: return "unlimited";
  }
  return "?";
}

namespace {

// Un-normalized series: terms cover exponents [v, v + terms.size()); when
// `order` is set the terms fill exactly up to it.
struct Raw {
  int v = 0;
  std::vector<Coefficient> terms;
  std::optional<int> order;
  int window = HyperSeries::kDefaultWindow;
};

int stored_end(const HyperSeries& x) {
  return x.valuation() + static_cast<int>(x.terms().size());
}

Coefficient coefficient_or_zero(const HyperSeries& x, int exponent) {
  if (x.is_zero()) return Coefficient(0);
  const int i = exponent - x.valuation();
  if (i < 0 || i >= static_cast<int>(x.terms().size())) return Coefficient(0);
  return x.terms()[static_cast<size_t>(i)];
}

std::optional<int> min_order(std::optional<int> a, std::optional<int> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

Raw raw_sum(const HyperSeries& x, const HyperSeries& y) {
  Raw r;
  r.window = std::min(x.window(), y.window());
  if (x.is_zero() && y.is_zero()) return r;
  if (x.is_zero() || y.is_zero()) {
    const HyperSeries& s = x.is_zero() ? y : x;
    r.v = s.valuation();
    r.terms.assign(s.terms().begin(), s.terms().end());
    r.order = s.truncation_order();
    return r;
  }
  r.v = std::min(x.valuation(), y.valuation());
  r.order = min_order(x.truncation_order(), y.truncation_order());
  const int end = r.order ? *r.order : std::max(stored_end(x), stored_end(y));
  r.terms.reserve(static_cast<size_t>(std::max(0, end - r.v)));
  for (int e = r.v; e < end; ++e) {
    r.terms.push_back(coefficient_or_zero(x, e) + coefficient_or_zero(y, e));
  }
  return r;
}

Raw raw_difference(const HyperSeries& x, const HyperSeries& y) { return raw_sum(x, -y); }

// Index of the first term whose error interval excludes zero, or -1.
int first_definite(const Raw& r) {
  for (size_t i = 0; i < r.terms.size(); ++i) {
    if (!r.terms[i].possibly_zero()) return static_cast<int>(i);
  }
  return -1;
}

bool all_exact_zero(const Raw& r) {
  return std::all_of(r.terms.begin(), r.terms.end(),
                     [](const Coefficient& c) { return c.is_exact_zero(); });
}

Classification classify_raw(const Raw& r) {
  const int i = first_definite(r);
  if (i >= 0) {
    const int e = r.v + i;
    if (e < 0) return Classification::unlimited;
    if (e == 0) return Classification::appreciable;
    return Classification::infinitesimal;
  }
  if (!r.order) return Classification::zero;
  if (*r.order >= 1) return Classification::infinitesimal;
  raise(all_exact_zero(r) ? ErrorCode::WindowCollapse : ErrorCode::PrecisionUndecided,
        "difference is only known to be O(eps^" + std::to_string(*r.order) + ")");
}

}  // namespace

HyperSeries HyperSeries::from_terms(int valuation, std::vector<Coefficient> terms, int window,
                                    std::optional<int> order) {
  if (window < 1) raise(ErrorCode::InvalidArgument, "window must be positive");
  size_t lead = 0;
  while (lead < terms.size() && terms[lead].is_exact_zero()) ++lead;
  if (lead == terms.size()) {
    if (order) {
      raise(ErrorCode::WindowCollapse,
            "every term inside the window cancelled; value is only known to be O(eps^" +
                std::to_string(*order) + ")");
    }
    return HyperSeries(window);
  }
  HyperSeries s(window);
  s.valuation_ = valuation + static_cast<int>(lead);
  terms.erase(terms.begin(), terms.begin() + static_cast<long>(lead));
  if (!order) {
    while (!terms.empty() && terms.back().is_exact_zero()) terms.pop_back();
  } else {
    terms.resize(static_cast<size_t>(std::max(0, *order - s.valuation_)));
  }
  if (static_cast<int>(terms.size()) > window) {
    terms.resize(static_cast<size_t>(window));
    order = s.valuation_ + window;
  }
  if (s.valuation_ < -window) {
    raise(ErrorCode::WindowCollapse, "valuation " + std::to_string(s.valuation_) +
                                         " is below the window limit -" + std::to_string(window));
  }
  s.terms_ = std::move(terms);
  s.order_ = order;
  return s;
}

HyperSeries HyperSeries::constant(const Coefficient& c, int window) {
  return from_terms(0, {c}, window);
}

HyperSeries HyperSeries::monomial(const Coefficient& c, int exponent, int window) {
  return from_terms(exponent, {c}, window);
}

HyperSeries HyperSeries::epsilon(int window) { return monomial(Coefficient(1), 1, window); }

HyperSeries HyperSeries::unlimited(int window) { return monomial(Coefficient(1), -1, window); }

bool HyperSeries::exact_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Coefficient& c) { return c.exact(); });
}

Coefficient HyperSeries::coefficient(int exponent) const {
  if (order_ && exponent >= *order_) {
    raise(ErrorCode::WindowCollapse, "coefficient of eps^" + std::to_string(exponent) +
                                         " lies beyond the truncation order " +
                                         std::to_string(*order_));
  }
  return coefficient_or_zero(*this, exponent);
}

HyperSeries HyperSeries::truncated_at(int order) const {
  if (is_zero()) return *this;
  if (order_ && *order_ <= order) return *this;
  std::vector<Coefficient> terms;
  for (int e = valuation_; e < order; ++e) terms.push_back(coefficient_or_zero(*this, e));
  return from_terms(valuation_, std::move(terms), window_, order);
}

HyperSeries HyperSeries::with_window(int window) const {
  if (is_zero()) return HyperSeries(window);
  return from_terms(valuation_, terms_, window, order_);
}

HyperSeries HyperSeries::operator-() const {
  HyperSeries r = *this;
  for (auto& c : r.terms_) c = -c;
  return r;
}

HyperSeries operator+(const HyperSeries& x, const HyperSeries& y) {
  Raw r = raw_sum(x, y);
  if (r.terms.empty() && !r.order) return HyperSeries(r.window);
  return HyperSeries::from_terms(r.v, std::move(r.terms), r.window, r.order);
}

HyperSeries operator-(const HyperSeries& x, const HyperSeries& y) { return x + (-y); }

HyperSeries operator*(const HyperSeries& x, const HyperSeries& y) {
  const int window = std::min(x.window(), y.window());
  if (x.is_zero() || y.is_zero()) return HyperSeries(window);
  const int v = x.valuation() + y.valuation();
  const int lx = static_cast<int>(x.terms().size());
  const int ly = static_cast<int>(y.terms().size());
  std::optional<int> order;
  if (x.truncation_order()) order = *x.truncation_order() + y.valuation();
  if (y.truncation_order()) order = min_order(order, *y.truncation_order() + x.valuation());
  int count = order ? *order - v : lx + ly - 1;
  if (count > window) {
    count = window;
    order = v + window;
  }
  std::vector<Coefficient> terms(static_cast<size_t>(count));
  for (int k = 0; k < count; ++k) {
    Coefficient acc;
    for (int i = std::max(0, k - ly + 1); i <= std::min(k, lx - 1); ++i) {
      acc = acc + x.terms()[static_cast<size_t>(i)] * y.terms()[static_cast<size_t>(k - i)];
    }
    terms[static_cast<size_t>(k)] = acc;
  }
  return HyperSeries::from_terms(v, std::move(terms), window, order);
}

HyperSeries operator/(const HyperSeries& x, const HyperSeries& y) { return x * inverse(y); }

bool operator==(const HyperSeries& x, const HyperSeries& y) {
  if (x.is_zero() || y.is_zero()) return x.is_zero() && y.is_zero();
  return x.valuation_ == y.valuation_ && x.order_ == y.order_ && x.terms_ == y.terms_;
}

HyperSeries add(const HyperSeries& x, const HyperSeries& y) { return x + y; }
HyperSeries mul(const HyperSeries& x, const HyperSeries& y) { return x * y; }

HyperSeries inverse(const HyperSeries& x) {
  if (x.is_zero()) raise(ErrorCode::DivisionByZero, "inverse of zero");
  const int window = x.window();
  const auto a = x.terms();
  const Coefficient& lead = a[0];
  if (x.terminates() && a.size() == 1) {
    return HyperSeries::monomial(Coefficient(1) / lead, -x.valuation(), window);
  }
  int count = window;
  if (x.truncation_order()) count = std::min(count, *x.truncation_order() - x.valuation());
  std::vector<Coefficient> b(static_cast<size_t>(count));
  b[0] = Coefficient(1) / lead;
  for (int n = 1; n < count; ++n) {
    Coefficient acc;
    for (int k = 1; k <= std::min<int>(n, static_cast<int>(a.size()) - 1); ++k) {
      acc = acc + a[static_cast<size_t>(k)] * b[static_cast<size_t>(n - k)];
    }
    b[static_cast<size_t>(n)] = -acc / lead;
  }
  return HyperSeries::from_terms(-x.valuation(), std::move(b), window, -x.valuation() + count);
}

HyperSeries pow(const HyperSeries& x, long exponent) {
  if (exponent < 0) return pow(inverse(x), -exponent);
  HyperSeries result = HyperSeries::constant(Coefficient(1), x.window());
  HyperSeries base = x;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Ordering compare(const HyperSeries& x, const HyperSeries& y) {
  const Raw d = raw_difference(y, x);
  for (const auto& c : d.terms) {
    if (c.is_exact_zero()) continue;
    const int s = c.sign();  // throws PrecisionUndecided when straddling zero
    return s > 0 ? Ordering::less : Ordering::greater;
  }
  if (d.order) {
    raise(ErrorCode::WindowCollapse, "operands agree through the window; difference is O(eps^" +
                                         std::to_string(*d.order) + ")");
  }
  return Ordering::equal;
}

Classification classify(const HyperSeries& x) {
  if (x.is_zero()) return Classification::zero;
  Raw r;
  r.v = x.valuation();
  r.terms.assign(x.terms().begin(), x.terms().end());
  r.order = x.truncation_order();
  return classify_raw(r);
}

bool is_limited(const HyperSeries& x) { return classify(x) != Classification::unlimited; }

Coefficient standard_part(const HyperSeries& x) {
  if (classify(x) == Classification::unlimited) {
    raise(ErrorCode::UnlimitedHasNoStandardPart, to_string(x) + " is unlimited");
  }
  if (x.is_zero() || x.valuation() > 0) return Coefficient(0);
  return x.coefficient(0);
}

bool adequal(const HyperSeries& x, const HyperSeries& y) {
  const Classification c = classify_raw(raw_difference(x, y));
  return c == Classification::zero || c == Classification::infinitesimal;
}

namespace {

std::string monomial_text(int e) {
  if (e == 0) return "";
  if (e == 1) return "eps";
  if (e == -1) return "H";
  if (e > 0) return "eps^" + std::to_string(e);
  return "H^" + std::to_string(-e);
}

}  // namespace

std::string to_string(const HyperSeries& x) {
  std::string out;
  for (size_t i = 0; i < x.terms().size(); ++i) {
    const Coefficient& c = x.terms()[i];
    if (c.value() == 0) continue;
    const int e = x.valuation() + static_cast<int>(i);
    const bool negative = c.value() < 0;
    const Rational mag = abs(c.value());
    const std::string mono = monomial_text(e);
    const std::string mag_text =
        c.exact() ? to_string(mag) : to_decimal(mag, supported_decimals(c));
    const bool unit = c.exact() && mag == 1 && !mono.empty();
    std::string text = mono.empty() ? mag_text : (unit ? mono : mag_text + "*" + mono);
    if (out.empty()) {
      // A leading "-eps^2" would read as (-eps)^2, since unary minus binds tighter than ^.
      if (negative) out = (unit && (e > 1 || e < -1)) ? "-1*" + mono : "-" + text;
      else out = text;
    } else {
      out += negative ? " - " : " + ";
      out += text;
    }
  }
  return out.empty() ? "0" : out;
}


}  // namespace ie
