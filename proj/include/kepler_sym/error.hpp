#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kepler_sym {

// One code per distinguishable failure. Callers (the CLI in particular)
// switch on the code, never on the message text.
enum class ErrorCode {
  // expr
  kSyntax,
  kUnknownFunction,
  kUnboundVariable,
  kDivisionByZero,
  kNegativeSqrt,
  kNonPositiveLog,
  kPowerDomain,
  kJetContext,
  // minkowski / orbit
  kZeroVector,
  kEqualPoints,
  kOriginPoint,
  kLineNotOrbit,
  kZeroTriple,
  kOutsideBranch,
  kNotEllipse,
  kParabolaNoAxes,
  kRankDeficient,
  kStepFailure,
  // symmetry
  kChartExit,
  kVertexCrossing,
  kInvalidGroupElement,
  kOutsideAlgebra,
  kZeroEnergy,
  // maps
  kSingularRadius,
  // invariants
  kPositivity,
  kVanishingForce,
  // theorems
  kTangentThroughOrigin,
  kOsculatingLine,
  kDegenerateCurve,
  kVertexInArc,
  kUncertified,
  kOutsideHillRegion,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse failures carry the 0-based offset of the offending character
// (end of input reports the input length).
class SyntaxError : public Error {
 public:
  SyntaxError(ErrorCode code, std::size_t position, const std::string& what)
      : Error(code, what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Thrown by flows that leave the affine chart; carries the last time known
// to be inside it.
class ChartExitError : public Error {
 public:
  ChartExitError(ErrorCode code, double exit_time, const std::string& what)
      : Error(code, what), exit_time_(exit_time) {}

  double exit_time() const noexcept { return exit_time_; }

 private:
  double exit_time_;
};

}  // namespace kepler_sym
