#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kmvol {

enum class ErrorCode {
  UnknownAlgebra,
  TwistUnavailable,
  NotSymmetrizable,
  SingularMatrix,
  NotFiniteType,
  NotHyperbolic,
  DimensionMismatch,
  DimensionCap,
  BudgetExhausted,
  InvalidSampleCount,
  DivergentPoint,
  ParseError,
  UnknownAlias,
  InvalidArgument,
  IoError,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this exception type; the code
// is what callers branch on, the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> position = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        position_(position) {}

  ErrorCode code() const noexcept { return code_; }
  // Character offset for ParseError, when known.
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> position_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownAlgebra: return "UnknownAlgebra";
    case ErrorCode::TwistUnavailable: return "TwistUnavailable";
    case ErrorCode::NotSymmetrizable: return "NotSymmetrizable";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NotFiniteType: return "NotFiniteType";
    case ErrorCode::NotHyperbolic: return "NotHyperbolic";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DimensionCap: return "DimensionCap";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::InvalidSampleCount: return "InvalidSampleCount";
    case ErrorCode::DivergentPoint: return "DivergentPoint";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownAlias: return "UnknownAlias";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace kmvol
