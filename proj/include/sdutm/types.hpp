// Shared scalar types and the error taxonomy used across the library.
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace sdutm {

using Cx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Error categories surfaced to callers (and mapped to CLI exit codes).
enum class ErrorCode {
  InvalidArgument,           // malformed inputs: sizes, signs, ranges
  UnsupportedDiscretization, // (equation, stencil, BC) combination not in the catalog
  InvalidProblem,            // problem rejected by validation or missing data
  DerivativesRequired,       // boundary data lacks required time derivatives
  AccuracyFailure,           // quadrature/series could not reach the requested tolerance
  ResourceLimit,             // configured size/time budget exceeded
  NumericalFailure,          // overflow, NaN, or singular system encountered
  ConfigError,               // unreadable or inconsistent run configuration
};

const char* error_code_name(ErrorCode code);

class SolverError : public std::runtime_error {
public:
  SolverError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw SolverError(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

} // namespace sdutm
