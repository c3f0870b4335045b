#include "kepler_sym/error.hpp"

namespace kepler_sym {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntax: return "syntax";
    case ErrorCode::kUnknownFunction: return "unknown-function";
    case ErrorCode::kUnboundVariable: return "unbound-variable";
    case ErrorCode::kDivisionByZero: return "division-by-zero";
    case ErrorCode::kNegativeSqrt: return "negative-sqrt";
    case ErrorCode::kNonPositiveLog: return "non-positive-log";
    case ErrorCode::kPowerDomain: return "power-domain";
    case ErrorCode::kJetContext: return "jet-context";
    case ErrorCode::kZeroVector: return "zero-vector";
    case ErrorCode::kEqualPoints: return "equal-points";
    case ErrorCode::kOriginPoint: return "origin-point";
    case ErrorCode::kLineNotOrbit: return "line-not-orbit";
    case ErrorCode::kZeroTriple: return "zero-triple";
    case ErrorCode::kOutsideBranch: return "outside-attractive-branch";
    case ErrorCode::kNotEllipse: return "not-ellipse";
    case ErrorCode::kParabolaNoAxes: return "parabola-no-axes";
    case ErrorCode::kRankDeficient: return "rank-deficient";
    case ErrorCode::kStepFailure: return "step-failure";
    case ErrorCode::kChartExit: return "chart-exit";
    case ErrorCode::kVertexCrossing: return "vertex-crossing";
    case ErrorCode::kInvalidGroupElement: return "invalid-group-element";
    case ErrorCode::kOutsideAlgebra: return "outside-algebra";
    case ErrorCode::kZeroEnergy: return "zero-energy";
    case ErrorCode::kSingularRadius: return "singular-radius";
    case ErrorCode::kPositivity: return "positivity";
    case ErrorCode::kVanishingForce: return "vanishing-force";
    case ErrorCode::kTangentThroughOrigin: return "tangent-through-origin";
    case ErrorCode::kOsculatingLine: return "osculating-line";
    case ErrorCode::kDegenerateCurve: return "degenerate-curve";
    case ErrorCode::kVertexInArc: return "vertex-in-arc";
    case ErrorCode::kUncertified: return "uncertified";
    case ErrorCode::kOutsideHillRegion: return "outside-hill-region";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
  }
  return "unknown";
}

}  // namespace kepler_sym
