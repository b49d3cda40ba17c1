#include "mees/error.hpp"

namespace mees {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptySpectrum: return "EmptySpectrum";
    case ErrorCode::UnsortedSpectrum: return "UnsortedSpectrum";
    case ErrorCode::DegenerateGround: return "DegenerateGround";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NonMonotone: return "NonMonotone";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::ZeroLambda0: return "ZeroLambda0";
    case ErrorCode::ZeroEntanglementTarget: return "ZeroEntanglementTarget";
    case ErrorCode::InvalidLeak: return "InvalidLeak";
    case ErrorCode::MeasureMismatch: return "MeasureMismatch";
    case ErrorCode::UnknownFixture: return "UnknownFixture";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace mees
