#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mees {

enum class ErrorCode {
  EmptySpectrum,
  UnsortedSpectrum,
  DegenerateGround,
  OutOfRange,
  NonMonotone,
  ZeroVector,
  InvalidState,
  NotUnitary,
  NotHermitian,
  ZeroLambda0,
  ZeroEntanglementTarget,
  InvalidLeak,
  MeasureMismatch,
  UnknownFixture,
  DimensionMismatch,
  InvalidConfig,
  Io,
};

std::string_view to_string(ErrorCode code);

// All domain failures surface as this exception; `code()` lets callers
// (the CLI in particular) map them to stable exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mees
