#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ie {

enum class ErrorCode {
  WindowCollapse,
  DivisionByZero,
  PrecisionUndecided,
  UnlimitedHasNoStandardPart,
  NonExactCoefficient,
  SyntaxError,
  UnknownFunction,
  UnboundVariable,
  DomainError,
  UnlimitedArgument,
  SignUndecidable,
  NoSignChange,
  HypothesisViolation,
  QuadratureNonconvergent,
  BudgetExceeded,
  InvalidArgument,
};

std::string_view error_name(ErrorCode code);

/// Every failure raised by the engine. The code names the failure the way the
/// CLI reports it ("DomainError: ln at nonpositive standard part").
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& message);

}  // namespace ie
