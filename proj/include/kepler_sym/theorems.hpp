#pragma once

// Curve duality, osculating Kepler orbits and Kepler vertices, the
// minor-axis Lambert identity, envelopes of orbit families, and the curved
// Kepler energy quadric.

#include <functional>
#include <vector>

#include "kepler_sym/curve.hpp"
#include "kepler_sym/minkowski.hpp"
#include "kepler_sym/orbit.hpp"
#include "kepler_sym/rational.hpp"

namespace kepler_sym {

struct Circle {
  double cx;
  double cy;
  double radius;
};

// The tangent lines of an orbit, as points of the dual plane, fill the
// circle of radius c about (a, b).
Circle dual_of_orbit(const KeplerOrbit& o);

// Tangent line at gamma(t) written as ux + vy = 1: (u, v) = (y', -x') /
// (x y' - y x'). Evaluation throws Error(kTangentThroughOrigin) where the
// tangent passes through the origin.
ParametricCurve dual_curve(const ParametricCurve& gamma);

struct Jet2Polar {
  double theta;
  double rho;   // 1/r
  double rho1;  // d rho / d theta
  double rho2;
};

// Polar 2-jet of gamma at t. Throws Error(kTangentThroughOrigin) if
// d theta / dt = 0 there.
Jet2Polar polar_jet(const ParametricCurve& gamma, double t);

// a = -rho'' cos - rho' sin, b = -rho'' sin + rho' cos, c = rho + rho''.
// Throws Error(kOsculatingLine) when c is negligible.
KeplerOrbit osculating_orbit(const Jet2Polar& j);

// Parameters where the osculating Kepler orbit has higher contact, found as
// curvature extrema of dual_curve(gamma): sign changes of the curvature
// derivative on a uniform grid, refined by bisection. Throws
// Error(kDegenerateCurve) when the dual curvature is constant (gamma is
// itself a Kepler orbit).
std::vector<double> kepler_vertices(const ParametricCurve& gamma, int grid = 2048);

struct NestedResult {
  bool nested;
  // Both orbits are ellipses; outside that regime the answer is sampled only.
  bool certified;
};

// Disjointness by sampling rho1 - rho2 on the common domain rho1, rho2 > 0.
NestedResult nested(const KeplerOrbit& o1, const KeplerOrbit& o2, int samples = 4096);

struct TaitKneserReport {
  std::vector<double> parameters;
  std::vector<KeplerOrbit> orbits;
  int pairs = 0;
  int nested_pairs = 0;
  // Pairs involving a parabola or hyperbola; nested there is sampled only.
  int uncertified_pairs = 0;
  int timelike_chords = 0;

  bool ok() const { return nested_pairs == pairs && timelike_chords == pairs; }
};

// Osculating orbits at k interior points of [ta, tb]. Throws
// Error(kVertexInArc) if a Kepler vertex lies strictly inside the arc.
TaitKneserReport tait_kneser(const ParametricCurve& gamma, double ta, double tb, int k = 12,
                             int grid = 2048);

// Point with eccentric anomaly u: (A(cos u - e), B sin u) in the pericenter
// frame. Throws Error(kNotEllipse).
PlanePoint eccentric_point(const KeplerOrbit& o, double u);
double eccentric_anomaly(const KeplerOrbit& o, const PlanePoint& p);

struct LambertSides {
  double lhs;  // B^2 sin^2((u1 - u2)/2), B the minor axis
  double rhs;  // r12^2 - (r1 - r2)^2
};

LambertSides lambert_check(const KeplerOrbit& o, double u1, double u2);

struct ExactLambertSides {
  Rational lhs;
  Rational rhs;
};

// Exact evaluation for a rational dual (a, b, c) and rational points
// (cos u, sin u) on the unit circle. Throws Error(kNotEllipse),
// Error(kInvalidArgument) for points off the circle or on overflow.
ExactLambertSides lambert_check_exact(const Rational& a, const Rational& b, const Rational& c,
                                      const Rational& cos1, const Rational& sin1,
                                      const Rational& cos2, const Rational& sin2);

// Parabola y^2 = 4p(x + p), p = B^2/(4 x1), enveloping the ellipses of
// minor axis B through (x1, 0).
KeplerOrbit envelope_minor_axis(double B, double x1);
// n members through (x1, 0) with c^2 - a^2 - b^2 = 4/B^2, b spread over
// [-1/x1, 1/x1].
std::vector<KeplerOrbit> minor_axis_family(double B, double x1, int n);

// Ellipse with dual (-1/(2p), 0, 1/(2p) - E), p = (1 + E x0)/(x0 E^2),
// enveloping the energy-E orbits through (x0, 0). Throws
// Error(kOutsideHillRegion) when 1 + E x0 <= 0.
KeplerOrbit envelope_energy(double E, double x0);
std::vector<KeplerOrbit> energy_family(double E, double x0, int n);

// The focus other than the origin. Throws Error(kNotEllipse).
PlanePoint second_focus(const KeplerOrbit& o);

// Lines n . q = +-offset enveloping the Hooke ellipses of area Delta through
// P (normal n perpendicular to P, offset Delta / (pi |P|)).
struct HookeEnvelope {
  PlanePoint normal;
  double offset;
};
HookeEnvelope envelope_hooke(double Delta, const PlanePoint& P = {1.0, 0.0});
// Centered ellipse through P with area Delta: |P| R (cos t + s k sin t, k sin t)
// with k = Delta / (pi |P|^2) and R the rotation taking (1, 0) to P / |P|.
ParametricCurve hooke_member(double Delta, double shear, const PlanePoint& P = {1.0, 0.0});

struct Contact {
  // |F| at the extremum of F along the member closest to zero.
  double residual;
  double parameter;
  // F takes both signs beyond the tolerance: the member crosses.
  bool crossing;
};

// Tangency of a member curve to the level set F = 0, from the extrema of
// h(t) = F(gamma(t)) (sign changes of grad F . gamma', bisected).
using ImplicitFn = std::function<double(const PlanePoint&)>;
using ImplicitGrad = std::function<PlanePoint(const PlanePoint&)>;
Contact contact(const ParametricCurve& member, const ImplicitFn& F, const ImplicitGrad& grad,
                double tol = 1e-7, int grid = 4096);
// F = a x + b y + c r - 1 of the envelope orbit.
Contact contact(const KeplerOrbit& member, const KeplerOrbit& envelope, double tol = 1e-7);
// F = n . q / offset - 1 for the line on the side of `sign`.
Contact contact(const ParametricCurve& member, const HookeEnvelope& env, int sign,
                double tol = 1e-7);

// E + k M^2 / 2.
double curved_energy(double E, double M, double k);
// |a^2 + b^2 - (c - |E_k|)^2 + E_k^2 + k| on a signed representative.
double curved_quadric_check(const MinkVec& v, double E_k, double k);

}  // namespace kepler_sym
