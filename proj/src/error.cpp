#include "modrate/error.hpp"

namespace modrate {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::GridShiftMismatch: return "GridShiftMismatch";
    case ErrorCode::QuadratureBudgetExceeded: return "QuadratureBudgetExceeded";
    case ErrorCode::UncertifiableSup: return "UncertifiableSup";
    case ErrorCode::ConvexSolveNotConverged: return "ConvexSolveNotConverged";
    case ErrorCode::BasisNormMismatch: return "BasisNormMismatch";
    case ErrorCode::UnknownExample: return "UnknownExample";
    case ErrorCode::NonDyadicBreakpoint: return "NonDyadicBreakpoint";
    case ErrorCode::InsufficientCertification: return "InsufficientCertification";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace modrate
