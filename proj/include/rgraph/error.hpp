#pragma once

#include <stdexcept>
#include <string>

namespace rgraph {

enum class ErrorCode {
  kInvalidArgument,
  kParseError,
  kIoError,
  kDegenerateCovariance,
  kZeroVariance,
  kKTooLarge,
  kCapExceeded,
  kInfeasible,
  kNumericOverflow,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kParseError: return "parse_error";
    case ErrorCode::kIoError: return "io_error";
    case ErrorCode::kDegenerateCovariance: return "degenerate_covariance";
    case ErrorCode::kZeroVariance: return "zero_variance";
    case ErrorCode::kKTooLarge: return "k_too_large";
    case ErrorCode::kCapExceeded: return "cap_exceeded";
    case ErrorCode::kInfeasible: return "infeasible";
    case ErrorCode::kNumericOverflow: return "numeric_overflow";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace rgraph
