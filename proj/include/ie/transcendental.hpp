#pragma once

#include <optional>
#include <string_view>

#include "ie/coefficient.hpp"

namespace ie {

enum class Function { sin, cos, exp, ln, sqrt, abs, atan };

std::optional<Function> function_from_name(std::string_view name);
std::string_view function_name(Function f);

/// f(x) at a real argument, to `digits` decimal digits, with a rigorous error
/// bound that also absorbs the argument's own error. Exact results are
/// returned where they are rational (sin 0, exp 0, ln 1, sqrt of a rational
/// square, abs of an exact value).
///
/// Throws DomainError for ln at x <= 0 and sqrt at x < 0, PrecisionUndecided
/// when the argument's interval straddles the domain boundary.
Coefficient eval_function(Function f, const Coefficient& x, int digits);

/// π to `digits` decimal digits.
Coefficient pi(int digits);

}  // namespace ie
