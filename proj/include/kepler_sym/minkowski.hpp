#pragma once

// Geometry of R^{2,1}: coordinates (a, b, c) with quadratic form a^2+b^2-c^2.
// A point (a, b, c) with c != 0 is the dual of the Kepler orbit ax+by+cr=1.

#include <array>
#include <string_view>

namespace kepler_sym {

struct MinkVec {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  friend MinkVec operator+(const MinkVec& u, const MinkVec& v) {
    return {u.a + v.a, u.b + v.b, u.c + v.c};
  }
  friend MinkVec operator-(const MinkVec& u, const MinkVec& v) {
    return {u.a - v.a, u.b - v.b, u.c - v.c};
  }
  friend MinkVec operator*(double s, const MinkVec& v) { return {s * v.a, s * v.b, s * v.c}; }
  friend bool operator==(const MinkVec&, const MinkVec&) = default;
};

enum class Causal { kSpacelike, kNull, kTimelike };
enum class PlaneType { kElliptic, kParabolic, kHyperbolic };

std::string_view to_string(Causal c);
std::string_view to_string(PlaneType t);

// a^2 + b^2 - c^2; negative for timelike vectors.
double norm2(const MinkVec& v);

// Minkowski inner product a1 a2 + b1 b2 - c1 c2.
double inner(const MinkVec& u, const MinkVec& v);

// Tolerance used for the null class: 1e-10 (1 + a^2 + b^2 + c^2).
double null_tolerance(const MinkVec& v);

// Throws Error(kZeroVector) for v = 0.
Causal classify_vector(const MinkVec& v);

// {v : n . v = d} with Euclidean normal n.
struct MinkPlane {
  MinkVec normal;
  double offset = 0.0;
};

// Elliptic iff the normal is timelike, parabolic iff null, hyperbolic iff
// spacelike. Throws Error(kZeroVector) for a zero normal.
PlaneType classify_plane(const MinkPlane& p);

// Orbits through the plane point (x, y): the plane ax + by + cr = 1 with
// r = |(x, y)|. Throws Error(kOriginPoint) at the origin.
MinkPlane point_plane(double x, double y);

// A line of R^{2,1}: a one-parameter family (pencil) of Kepler orbits.
struct Pencil {
  MinkVec base;
  MinkVec direction;

  MinkVec at(double s) const { return base + s * direction; }
};

struct PencilClass {
  Causal causal;
  // Common points of two orbits of the pencil, counted on the full cone.
  // Certified for pairs of ellipses only.
  int predicted_common_points;
};

// Throws Error(kEqualPoints) when v1 == v2.
PencilClass pencil_classify(const MinkVec& v1, const MinkVec& v2);

}  // namespace kepler_sym
