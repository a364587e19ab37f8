#include "trmf/error.hpp"

namespace trmf {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNotSPD: return "NotSPD";
    case ErrorCode::kNonFiniteEncountered: return "NonFiniteEncountered";
    case ErrorCode::kSeriesTooShort: return "SeriesTooShort";
    case ErrorCode::kDegenerateRidge: return "DegenerateRidge";
    case ErrorCode::kEmptyMask: return "EmptyMask";
    case ErrorCode::kMissingValuesUnsupported: return "MissingValuesUnsupported";
    case ErrorCode::kIndexOutOfBounds: return "IndexOutOfBounds";
    case ErrorCode::kTooManyWindows: return "TooManyWindows";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kRaggedRows: return "RaggedRows";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
    case ErrorCode::kCorruptFile: return "CorruptFile";
    case ErrorCode::kZeroDenominator: return "ZeroDenominator";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

bool is_solver_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotSPD:
    case ErrorCode::kNonFiniteEncountered:
    case ErrorCode::kDegenerateRidge:
    case ErrorCode::kZeroDenominator:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace trmf
