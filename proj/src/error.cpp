#include "scalefield/error.hpp"

namespace scalefield {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNotInBaseSet: return "NotInBaseSet";
    case ErrorCode::kNotRepresentable: return "NotRepresentable";
    case ErrorCode::kZeroScaling: return "ZeroScaling";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kOrderUndefined: return "OrderUndefined";
    case ErrorCode::kOutOfBounds: return "OutOfBounds";
    case ErrorCode::kBoundaryPoint: return "BoundaryPoint";
    case ErrorCode::kZeroCoupling: return "ZeroCoupling";
    case ErrorCode::kZeroLevel: return "ZeroLevel";
    case ErrorCode::kDegenerateParameterization: return "DegenerateParameterization";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kValidationError: return "ValidationError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what), code_(code) {}

void Throw(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace scalefield
