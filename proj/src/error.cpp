#include "gdpp/error.hpp"

#include <atomic>
#include <iostream>

namespace gdpp {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::NumericalDegeneracy: return "NumericalDegeneracy";
    case ErrorCode::ZeroMarginal: return "ZeroMarginal";
    case ErrorCode::DegenerateBasis: return "DegenerateBasis";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::MissingWeights: return "MissingWeights";
    case ErrorCode::SolverDiverged: return "SolverDiverged";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {
std::atomic<bool> g_warnings{true};
}

void set_warnings_enabled(bool enabled) noexcept { g_warnings = enabled; }
bool warnings_enabled() noexcept { return g_warnings; }

void warn(const std::string& message) {
  if (g_warnings) std::cerr << "warning: " << message << '\n';
}

}  // namespace gdpp
