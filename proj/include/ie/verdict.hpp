#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ie/rational.hpp"

namespace ie {

/// Outcome of a semidecidable query.
enum class VerdictStatus {
  decided,
  /// Both signs recur late in the sample: the answer depends on the ultrafilter.
  undecided_ultrafilter,
  /// The horizon was too short to see stabilization.
  undecided_horizon,
  /// A fixed probe battery passed but no certificate applied.
  undecided_probe,
};

std::string_view to_string(VerdictStatus s);

/// A real known to lie within `radius` of `value`.
struct ApproxReal {
  Rational value;
  Rational radius;

  bool contains(const Rational& r) const { return abs(Rational(value - r)) <= radius; }
};

std::string to_string(const ApproxReal& r);

template <class T>
struct Verdict {
  VerdictStatus status = VerdictStatus::undecided_horizon;
  std::optional<T> value;
  /// Decided: first index of the stable tail. Undecided: oscillation or disagreement witnesses.
  std::vector<Integer> evidence;
  Integer horizon = 0;
  std::string note;

  bool decided() const { return status == VerdictStatus::decided; }

  static Verdict decide(T v, std::vector<Integer> evidence = {}, Integer horizon = 0,
                        std::string note = {}) {
    return Verdict{VerdictStatus::decided, std::move(v), std::move(evidence), std::move(horizon),
                   std::move(note)};
  }
  static Verdict undecided(VerdictStatus s, std::vector<Integer> evidence = {},
                           Integer horizon = 0, std::string note = {}) {
    return Verdict{s, std::nullopt, std::move(evidence), std::move(horizon), std::move(note)};
  }
};

}  // namespace ie
