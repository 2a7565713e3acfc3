#include "ie/stream.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <mutex>
#include <variant>

#include "ie/error.hpp"

namespace ie {

std::string_view to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::decided: return "Decided";
    case VerdictStatus::undecided_ultrafilter: return "UndecidedUltrafilter";
    case VerdictStatus::undecided_horizon: return "UndecidedHorizon";
    case VerdictStatus::undecided_probe: return "Undecided";
  }
  return "?";
}

std::string to_string(const ApproxReal& r) {
  return to_decimal(r.value, 12) + " ± " + to_decimal(r.radius, 12);
}

struct HyperStream::State {
  Generator gen;
  std::string label;
  size_t cache_limit;
  std::mutex mu;
  std::map<Integer, std::variant<Rational, std::exception_ptr>> cache;
};

HyperStream::HyperStream(Generator gen, std::string label, size_t cache_limit)
    : state_(std::make_shared<State>()) {
  state_->gen = std::move(gen);
  state_->label = std::move(label);
  state_->cache_limit = cache_limit;
}

const std::string& HyperStream::label() const { return state_->label; }

Rational HyperStream::at(const Integer& n) const {
  if (n < 1) raise(ErrorCode::InvalidArgument, "stream indices start at 1");
  {
    std::lock_guard lock(state_->mu);
    auto it = state_->cache.find(n);
    if (it != state_->cache.end()) {
      if (auto* v = std::get_if<Rational>(&it->second)) return *v;
      std::rethrow_exception(std::get<std::exception_ptr>(it->second));
    }
  }
  // Evaluated outside the lock: generators may recursively hit other streams.
  std::variant<Rational, std::exception_ptr> result;
  try {
    result = state_->gen(n);
  } catch (...) {
    result = std::current_exception();
  }
  {
    std::lock_guard lock(state_->mu);
    if (state_->cache.size() >= state_->cache_limit) state_->cache.clear();
    state_->cache.emplace(n, result);
  }
  if (auto* v = std::get_if<Rational>(&result)) return *v;
  std::rethrow_exception(std::get<std::exception_ptr>(result));
}

HyperNat::HyperNat(Generator gen, std::string label) : gen_(std::move(gen)), label_(std::move(label)) {}

Integer HyperNat::at(const Integer& j) const {
  Integer k = gen_(j);
  if (k < 1) raise(ErrorCode::InvalidArgument, "hypernatural " + label_ + " produced a non-positive index");
  return k;
}

namespace {

unsigned long checked_shift(const Integer& n) {
  if (n < 0 || n > Integer(static_cast<unsigned long>(kMaxPowerBits))) {
    raise(ErrorCode::BudgetExceeded, "2^" + n.get_str() + " exceeds the evaluation budget");
  }
  return n.get_ui();
}

Integer two_to(const Integer& n) {
  Integer r(1);
  mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), checked_shift(n));
  return r;
}

}  // namespace

HyperNat HyperNat::identity() {
  return HyperNat([](const Integer& j) { return j; }, "n");
}

HyperNat HyperNat::square() {
  return HyperNat([](const Integer& j) { return Integer(j * j); }, "n^2");
}

HyperNat HyperNat::shifted(unsigned long k) {
  return HyperNat([k](const Integer& j) { return Integer(j + k); }, "n+" + std::to_string(k));
}

HyperNat HyperNat::power_of_two() {
  return HyperNat([](const Integer& j) { return two_to(j); }, "2^n");
}

HyperNat HyperNat::constant(const Integer& c) {
  return HyperNat([c](const Integer&) { return c; }, c.get_str());
}

namespace streams {

HyperStream constant(const Rational& c) {
  return HyperStream([c](const Integer&) { return c; }, "const:" + to_string(c));
}

HyperStream reciprocal() {
  return HyperStream([](const Integer& n) { return Rational(Integer(1), n); }, "1/n");
}

HyperStream identity() {
  return HyperStream([](const Integer& n) { return Rational(n); }, "n");
}

HyperStream square() {
  return HyperStream([](const Integer& n) { return Rational(Integer(n * n)); }, "n^2");
}

HyperStream shifted(long k) {
  return HyperStream([k](const Integer& n) { return Rational(Integer(n + k)); },
                     k >= 0 ? "n+" + std::to_string(k) : "n" + std::to_string(k));
}

HyperStream power_of_two() {
  return HyperStream([](const Integer& n) { return Rational(two_to(n)); }, "2^n");
}

HyperStream alternating_reciprocal() {
  return HyperStream(
      [](const Integer& n) {
        Rational r(Integer(1), n);
        return mpz_odd_p(n.get_mpz_t()) ? Rational(-r) : r;
      },
      "(-1)^n/n");
}

}  // namespace streams

HyperStream s_add(const HyperStream& x, const HyperStream& y) {
  return HyperStream([x, y](const Integer& n) { return Rational(x.at(n) + y.at(n)); },
                     "(" + x.label() + ")+(" + y.label() + ")");
}

HyperStream s_mul(const HyperStream& x, const HyperStream& y) {
  return HyperStream([x, y](const Integer& n) { return Rational(x.at(n) * y.at(n)); },
                     "(" + x.label() + ")*(" + y.label() + ")");
}

HyperStream s_neg(const HyperStream& x) {
  return HyperStream([x](const Integer& n) { return Rational(-x.at(n)); }, "-(" + x.label() + ")");
}

HyperStream s_sub(const HyperStream& x, const HyperStream& y) {
  return HyperStream([x, y](const Integer& n) { return Rational(x.at(n) - y.at(n)); },
                     "(" + x.label() + ")-(" + y.label() + ")");
}

std::vector<Integer> sampling_schedule(const Integer& horizon) {
  std::vector<Integer> points;
  for (Integer p = 1; p <= horizon; p *= 2) points.push_back(p);
  for (int q = 1; q <= 4; ++q) {
    Integer point = horizon * q / 4;
    if (point >= 1) points.push_back(point);
  }
  const size_t base = points.size();
  for (size_t i = 0; i < base; ++i) {
    if (points[i] >= 2) points.push_back(points[i] - 1);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

namespace {

bool feasible(const HyperStream& x, const Integer& j) {
  try {
    (void)x.at(j);
    return true;
  } catch (const Error& e) {
    return e.code() != ErrorCode::BudgetExceeded;
  }
}

struct Sample {
  Integer index;
  Rational value;
};

// Evaluates the schedule, dropping indices where the stream is undefined.
std::vector<Sample> sample(const HyperStream& x, const std::vector<Integer>& schedule) {
  std::vector<Sample> out;
  out.reserve(schedule.size());
  for (const auto& j : schedule) {
    try {
      out.push_back({j, x.at(j)});
    } catch (const Error&) {
    }
  }
  return out;
}

// Value at `at` of the polynomial interpolating (1/n_i, y_i).
Rational interpolate(const std::vector<Sample>& nodes, const Rational& at) {
  Rational total(0);
  for (size_t i = 0; i < nodes.size(); ++i) {
    const Rational xi(Integer(1), nodes[i].index);
    Rational basis(1);
    for (size_t k = 0; k < nodes.size(); ++k) {
      if (k == i) continue;
      const Rational xk(Integer(1), nodes[k].index);
      basis *= (at - xk) / (xi - xk);
    }
    total += nodes[i].value * basis;
  }
  return total;
}

bool is_power_of_two(const Integer& n) {
  return n > 0 && mpz_popcount(n.get_mpz_t()) == 1;
}

}  // namespace

Integer effective_horizon(const HyperStream& x, const Integer& horizon) {
  if (feasible(x, horizon)) return horizon;
  Integer lo = 0;
  Integer hi = horizon;
  while (hi - lo > 1) {
    Integer mid = (lo + hi) / 2;
    if (feasible(x, mid)) lo = mid;
    else hi = mid;
  }
  return lo;
}

Verdict<Ordering> s_compare(const HyperStream& x, const HyperStream& y, const Integer& horizon) {
  if (horizon < 16) raise(ErrorCode::InvalidArgument, "s_compare needs a horizon of at least 16");
  const HyperStream diff = s_sub(x, y);
  const Integer h = effective_horizon(diff, horizon);
  using V = Verdict<Ordering>;
  if (h < 16) {
    return V::undecided(VerdictStatus::undecided_horizon, {}, h,
                        "evaluation budget leaves fewer than 16 indices");
  }
  const auto samples = sample(diff, sampling_schedule(h));
  const size_t n = samples.size();
  if (n < 4) return V::undecided(VerdictStatus::undecided_horizon, {}, h, "too few defined samples");
  std::vector<int> signs;
  signs.reserve(n);
  for (const auto& s : samples) signs.push_back(sign(s.value));

  const size_t quartile = (n + 3) / 4;
  size_t stable = n - 1;
  while (stable > 0 && signs[stable - 1] == signs[n - 1]) --stable;
  if (stable <= n - quartile) {
    const Ordering o = signs[n - 1] > 0 ? Ordering::greater
                       : signs[n - 1] < 0 ? Ordering::less
                                          : Ordering::equal;
    return V::decide(o, {samples[stable].index}, h);
  }

  std::vector<Integer> positive, negative;
  for (size_t i = n - quartile; i < n; ++i) {
    if (signs[i] > 0) positive.push_back(samples[i].index);
    if (signs[i] < 0) negative.push_back(samples[i].index);
  }
  if (positive.size() >= 2 && negative.size() >= 2) {
    return V::undecided(VerdictStatus::undecided_ultrafilter,
                        {positive[0], positive[1], negative[0], negative[1]}, h,
                        "sign recurs on two interleaved index classes");
  }
  return V::undecided(VerdictStatus::undecided_horizon, {samples[stable].index}, h,
                      "sign has not stabilized across the top quartile");
}

Verdict<ApproxReal> s_standard_part(const HyperStream& x, const Integer& horizon,
                                    const Rational& tol) {
  using V = Verdict<ApproxReal>;
  const Integer h = effective_horizon(x, horizon);
  if (h == 0) return V::undecided(VerdictStatus::undecided_horizon, {}, h, "no evaluable index");
  const auto samples = sample(x, sampling_schedule(h));
  const size_t half = (samples.size() + 1) / 2;
  if (half < 4) return V::undecided(VerdictStatus::undecided_horizon, {}, h, "too few samples");
  const std::vector<Sample> tail(samples.end() - static_cast<long>(half), samples.end());

  const auto [lo, hi] = std::minmax_element(tail.begin(), tail.end(),
                                            [](const Sample& a, const Sample& b) { return a.value < b.value; });
  if (hi->value - lo->value <= tol) {
    return V::decide({(hi->value + lo->value) / 2, tol}, {tail.front().index}, h, "tail agreement");
  }

  // Polynomial extrapolation in 1/n over the trailing powers of two; accepted
  // only when two overlapping node sets agree and the polynomial reproduces
  // every tail sample.
  std::vector<Sample> powers;
  for (const auto& s : samples) {
    if (is_power_of_two(s.index)) powers.push_back(s);
  }
  const size_t degree_nodes = std::min<size_t>(6, powers.empty() ? 0 : powers.size() - 1);
  if (degree_nodes < 3) {
    return V::undecided(VerdictStatus::undecided_horizon, {tail.front().index}, h,
                        "tail samples disagree beyond tolerance");
  }
  const std::vector<Sample> latest(powers.end() - static_cast<long>(degree_nodes), powers.end());
  const std::vector<Sample> earlier(powers.end() - static_cast<long>(degree_nodes) - 1,
                                    powers.end() - 1);
  const Rational estimate = interpolate(latest, 0);
  const Rational check = interpolate(earlier, 0);
  bool consistent = abs(Rational(estimate - check)) <= tol;
  for (const auto& s : tail) {
    if (!consistent) break;
    consistent = abs(Rational(s.value - interpolate(latest, Rational(Integer(1), s.index)))) <= tol;
  }
  if (consistent) {
    return V::decide({estimate, tol}, {latest.front().index}, h, "extrapolated in 1/n");
  }
  return V::undecided(VerdictStatus::undecided_horizon, {latest.front().index, latest.back().index},
                      h, "tail samples disagree beyond tolerance");
}

HyperStream embed(const HyperSeries& x) {
  if (!x.exact_coefficients()) {
    raise(ErrorCode::NonExactCoefficient, "cannot embed " + to_string(x) + " into the sequence tier");
  }
  std::vector<Rational> terms;
  for (const auto& c : x.terms()) terms.push_back(c.value());
  const int v = x.valuation();
  return HyperStream(
      [terms, v](const Integer& n) {
        Rational total(0);
        const Rational inv_n(Integer(1), n);
        for (size_t i = 0; i < terms.size(); ++i) {
          if (terms[i] == 0) continue;
          const long e = v + static_cast<long>(i);
          total += terms[i] * (e >= 0 ? ipow(inv_n, e) : Rational(ipow(Rational(n), -e)));
        }
        return total;
      },
      "embed(" + to_string(x) + ")");
}

HyperStream extend_at(const HyperStream& r, const HyperNat& index) {
  return HyperStream([r, index](const Integer& j) { return r.at(index.at(j)); },
                     r.label() + " @ " + index.label());
}

}  // namespace ie
