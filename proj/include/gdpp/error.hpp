#pragma once

#include <stdexcept>
#include <string>

namespace gdpp {

enum class ErrorCode {
  InvalidParams = 1,
  InvalidGraph,
  OutOfRange,
  TooLarge,
  ConvergenceFailure,
  NumericalDegeneracy,
  ZeroMarginal,
  DegenerateBasis,
  NoConvergence,
  InvalidDistribution,
  ShapeMismatch,
  MissingWeights,
  SolverDiverged,
  ParseError,
  IoError,
};

const char* error_code_name(ErrorCode code) noexcept;

/// Every failure in the library surfaces as this exception; the C API maps
/// `code()` one-to-one onto its status enum.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Warnings go to stderr unless silenced (the C API and tests silence them).
void set_warnings_enabled(bool enabled) noexcept;
bool warnings_enabled() noexcept;
void warn(const std::string& message);

}  // namespace gdpp
