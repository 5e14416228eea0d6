#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nvfix {

enum class ErrorCode {
  ParseError,
  DegreeMismatch,
  CapExceeded,
  IndexOutOfRange,
  RelationViolation,
  NotRealizable,
  GeneratorCountMismatch,
  PayloadMismatch,
  EmptyInput,
  NotFree,
  MissingRepresentative,
  InconsistentInput,
  UnsupportedSurface,
  SplitInput,
  SingularCovering,
  InconsistentPayload,
  DomainMismatch,
  EpsilonTooLarge,
  ValidationFailed,
  GridTooCoarse,
  ZeroOnCircle,
  DegreeUnstable,
  InconsistentClass,
  ConfigError,
  UnknownSuite,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace nvfix
