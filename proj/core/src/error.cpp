#include "nvfix/error.hpp"

namespace nvfix {

std::string_view to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::ParseError: return "ParseError";
  case ErrorCode::DegreeMismatch: return "DegreeMismatch";
  case ErrorCode::CapExceeded: return "CapExceeded";
  case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
  case ErrorCode::RelationViolation: return "RelationViolation";
  case ErrorCode::NotRealizable: return "NotRealizable";
  case ErrorCode::GeneratorCountMismatch: return "GeneratorCountMismatch";
  case ErrorCode::PayloadMismatch: return "PayloadMismatch";
  case ErrorCode::EmptyInput: return "EmptyInput";
  case ErrorCode::NotFree: return "NotFree";
  case ErrorCode::MissingRepresentative: return "MissingRepresentative";
  case ErrorCode::InconsistentInput: return "InconsistentInput";
  case ErrorCode::UnsupportedSurface: return "UnsupportedSurface";
  case ErrorCode::SplitInput: return "SplitInput";
  case ErrorCode::SingularCovering: return "SingularCovering";
  case ErrorCode::InconsistentPayload: return "InconsistentPayload";
  case ErrorCode::DomainMismatch: return "DomainMismatch";
  case ErrorCode::EpsilonTooLarge: return "EpsilonTooLarge";
  case ErrorCode::ValidationFailed: return "ValidationFailed";
  case ErrorCode::GridTooCoarse: return "GridTooCoarse";
  case ErrorCode::ZeroOnCircle: return "ZeroOnCircle";
  case ErrorCode::DegreeUnstable: return "DegreeUnstable";
  case ErrorCode::InconsistentClass: return "InconsistentClass";
  case ErrorCode::ConfigError: return "ConfigError";
  case ErrorCode::UnknownSuite: return "UnknownSuite";
  }
  return "Unknown";
}

} // namespace nvfix
