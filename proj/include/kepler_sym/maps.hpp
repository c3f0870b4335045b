#pragma once

// Point maps that carry whole families of Kepler orbits onto other families,
// each paired with a dual-side predictor of the image orbit.

#include "kepler_sym/minkowski.hpp"
#include "kepler_sym/orbit.hpp"

namespace kepler_sym {

// z -> z^2. Throws Error(kOriginPoint) at the origin.
PlanePoint square(const PlanePoint& p);

// The line ux + vy = 1, given as (u, v, 0), goes to the parabola
// ((u^2 - v^2)/2, uv, (u^2 + v^2)/2) under square.
MinkVec square_line_dual(const MinkVec& line);

// r -> r / (1 - r/M^2). Throws Error(kSingularRadius) when r = M^2 (to
// 1e-12 relative) and Error(kInvalidArgument) for M = 0.
PlanePoint flatten_M(const PlanePoint& p, double M);

// Dual translation c -> c - 1/M^2 (signed c); sends |M| orbits to lines.
MinkVec flatten_M_dual(const MinkVec& v, double M);

// r -> r / (1 + 2Er), E > 0.
PlanePoint hill_embed(const PlanePoint& p, double E);

// Canonical (c > 0) form of the image law: (a, b, c) -> (a, b, c + 2E).
MinkVec hill_dual(const MinkVec& canonical, double E);

// Reflection form on signed representatives: (a, b, c) -> (a, b, 2|E| - c),
// where an orbit of energy E > 0 is represented with c < 0.
MinkVec hill_dual_reflection(const MinkVec& signed_rep, double E);

// r -> r / (1 - 2Er), E > 0, for repelling branches. Throws
// Error(kSingularRadius) at r = 1/(2E).
PlanePoint repel_embed(const PlanePoint& p, double E);

// (X, Y) -> ((X^2 - 1)/Y, 2X/Y). Throws Error(kSingularRadius) for Y = 0.
PlanePoint parabola_chart(double X, double Y);

// Image of the vertical parabola Y = A X^2 + B X + C under parabola_chart.
MinkVec parabola_chart_dual(double A, double B, double C);

}  // namespace kepler_sym
