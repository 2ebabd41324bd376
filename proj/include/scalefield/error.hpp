#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scalefield {

enum class ErrorCode {
  kInvalidArgument,
  kNotInBaseSet,
  kNotRepresentable,
  kZeroScaling,
  kDivisionByZero,
  kOrderUndefined,
  kOutOfBounds,
  kBoundaryPoint,
  kZeroCoupling,
  kZeroLevel,
  kDegenerateParameterization,
  kIoError,
  kParseError,
  kValidationError,
};

std::string_view ErrorCodeName(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so callers
/// (and the CLI exit-code mapping) can branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Throw(ErrorCode code, const std::string& what);

}  // namespace scalefield
