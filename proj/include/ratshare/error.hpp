#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ratshare {

enum class ErrorCode {
  NotPrime,
  FieldTooLarge,
  ZeroInverse,
  MixedFields,
  DuplicateX,
  EmptyInput,
  BadThreshold,
  EmptyCoalition,
  OutOfRangeParticipant,
  EmptyList,
  TooManyParticipants,
  AuditTooLarge,
  BadProbability,
  BadUtilities,
  DegenerateTie,
  AxiomViolation,
  TooLarge,
  InvalidMove,
  BadConfig,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::FieldTooLarge: return "FieldTooLarge";
    case ErrorCode::ZeroInverse: return "ZeroInverse";
    case ErrorCode::MixedFields: return "MixedFields";
    case ErrorCode::DuplicateX: return "DuplicateX";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::BadThreshold: return "BadThreshold";
    case ErrorCode::EmptyCoalition: return "EmptyCoalition";
    case ErrorCode::OutOfRangeParticipant: return "OutOfRangeParticipant";
    case ErrorCode::EmptyList: return "EmptyList";
    case ErrorCode::TooManyParticipants: return "TooManyParticipants";
    case ErrorCode::AuditTooLarge: return "AuditTooLarge";
    case ErrorCode::BadProbability: return "BadProbability";
    case ErrorCode::BadUtilities: return "BadUtilities";
    case ErrorCode::DegenerateTie: return "DegenerateTie";
    case ErrorCode::AxiomViolation: return "AxiomViolation";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidMove: return "InvalidMove";
    case ErrorCode::BadConfig: return "BadConfig";
  }
  return "Unknown";
}

/// Every precondition failure in the library is reported as an Error
/// carrying a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ratshare
