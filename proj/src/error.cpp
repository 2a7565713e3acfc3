#include "ie/error.hpp"

namespace ie {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::WindowCollapse: return "WindowCollapse";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::PrecisionUndecided: return "PrecisionUndecided";
    case ErrorCode::UnlimitedHasNoStandardPart: return "UnlimitedHasNoStandardPart";
    case ErrorCode::NonExactCoefficient: return "NonExactCoefficient";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownFunction: return "UnknownFunction";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::UnlimitedArgument: return "UnlimitedArgument";
    case ErrorCode::SignUndecidable: return "SignUndecidable";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::HypothesisViolation: return "HypothesisViolation";
    case ErrorCode::QuadratureNonconvergent: return "QuadratureNonconvergent";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_name(code)) + ": " + message),
      code_(code),
      detail_(message) {}

void raise(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace ie
