#pragma once

#include <optional>
#include <span>
#include <vector>

#include "kepler_sym/minkowski.hpp"

namespace kepler_sym {

struct PlanePoint {
  double x = 0.0;
  double y = 0.0;

  double r() const;
  double theta() const;
  static PlanePoint polar(double r, double theta);
};

struct ConePoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

enum class ConicClass { kEllipse, kParabola, kHyperbola };
std::string_view to_string(ConicClass c);

// A Kepler orbit ax + by + cr = 1, stored with canonical c > 0. For a
// hyperbola only the attractive branch belongs to the value.
class KeplerOrbit {
 public:
  // Throws Error(kZeroTriple) for (0,0,0), Error(kLineNotOrbit) for c = 0.
  static KeplerOrbit from_abc(double a, double b, double c);
  static KeplerOrbit from_dual(const MinkVec& v) { return from_abc(v.a, v.b, v.c); }

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  MinkVec dual() const { return {a_, b_, c_}; }

  // Classified with the null tolerance of the minkowski module.
  ConicClass conic_class() const;

  // a cos(theta) + b sin(theta) + c, the reciprocal radius on the attractive branch.
  double rho(double theta) const;
  // a cos(theta) + b sin(theta) - c, positive exactly on the repelling branch.
  double rho_repelling(double theta) const;

 private:
  KeplerOrbit(double a, double b, double c) : a_(a), b_(b), c_(c) {}

  double a_;
  double b_;
  double c_;
};

struct Conserved {
  double e;  // eccentricity
  double E;  // energy
  double M;  // |angular momentum|
};

Conserved conserved(const KeplerOrbit& o);

// 1 / rho(theta). Throws Error(kOutsideBranch) when rho(theta) <= 0.
double radius(const KeplerOrbit& o, double theta);

// Angles of n points equally spaced over the arc where rho > 1e-6: the full
// circle for ellipses, an open arc around the pericenter otherwise.
std::vector<double> sample_angles(const KeplerOrbit& o, int n);
std::vector<PlanePoint> sample(const KeplerOrbit& o, int n);
// n points of the repelling branch where a cos + b sin - c > 1e-6.
// Throws Error(kOutsideBranch) unless the orbit is a hyperbola.
std::vector<PlanePoint> sample_repelling(const KeplerOrbit& o, int n);

enum class Membership { kOnAttractive, kOnRepelling, kOff };
std::string_view to_string(Membership m);

// |ax + by + cr - 1| <= tol (attractive) or |ax + by - cr - 1| <= tol (repelling).
Membership contains(const KeplerOrbit& o, const PlanePoint& p, double tol = 1e-9);

struct OrbitGeometry {
  double e;
  std::optional<double> semi_major;  // absent for parabolas
  std::optional<double> semi_minor;  // absent for parabolas; conjugate axis for hyperbolas
  double latus_rectum;               // full focal chord, 2/c = 2 M^2
  double pericenter_angle;           // atan2(b, a)
  double energy;
  double angular_momentum;
};

OrbitGeometry geometry(const KeplerOrbit& o);

struct ConicFit {
  // Least-squares minimizer of sum (a x_i + b y_i + c r_i - 1)^2, signed c.
  MinkVec dual;
  // |c| <= 1e-8 |(a, b)|: the points lie on the line ax + by = 1.
  bool is_line;
  // Fitted points sit on the branch with sign(c) r; c < 0 means repelling.
  bool repelling;
  // max_i |a x_i + b y_i + c r_i - 1|
  double residual;

  // Canonical orbit; requires !is_line.
  KeplerOrbit orbit() const { return KeplerOrbit::from_dual(dual); }
};

// Throws Error(kInvalidArgument) for < 3 points or a point at the origin,
// Error(kRankDeficient) when the design matrix is singular.
ConicFit fit(std::span<const PlanePoint> points);

// (x, y, sheet * r); sheet must be +1 or -1.
ConePoint lift(const PlanePoint& p, int sheet);
PlanePoint project(const ConePoint& q);

struct PhaseState {
  double t;
  double x;
  double y;
  double vx;
  double vy;
};

double energy(const PhaseState& s);
double angular_momentum(const PhaseState& s);

struct FlowPlan {
  int steps;
  double dt;
};

// One period for ellipses; a pericenter-passage arc of 20 r_p^{3/2} time
// units otherwise. dt is 1e-4 of that span, refined near tight pericenters.
FlowPlan default_flow_plan(const KeplerOrbit& o);

// RK4 integration of r'' = -r / |r|^3 from the pericenter with speed |M|/r_p,
// counterclockwise. Returns steps + 1 states. Throws Error(kStepFailure) if
// the trajectory approaches the origin.
std::vector<PhaseState> newton_flow(const KeplerOrbit& o, int steps, double dt);

}  // namespace kepler_sym
