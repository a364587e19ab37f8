#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace trmf {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kNotSPD,
  kNonFiniteEncountered,
  kSeriesTooShort,
  kDegenerateRidge,
  kEmptyMask,
  kMissingValuesUnsupported,
  kIndexOutOfBounds,
  kTooManyWindows,
  kParseError,
  kRaggedRows,
  kVersionMismatch,
  kCorruptFile,
  kZeroDenominator,
  kIoError,
};

/// Stable identifier for an error code, e.g. "NotSPD".
std::string_view error_name(ErrorCode code);

/// True for numerical failures raised inside a solver (as opposed to bad
/// input or configuration).
bool is_solver_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace trmf
