#include "kepler_sym/minkowski.hpp"

#include <cmath>

#include "kepler_sym/error.hpp"

namespace kepler_sym {

std::string_view to_string(Causal c) {
  switch (c) {
    case Causal::kSpacelike: return "spacelike";
    case Causal::kNull: return "null";
    case Causal::kTimelike: return "timelike";
  }
  return "?";
}

std::string_view to_string(PlaneType t) {
  switch (t) {
    case PlaneType::kElliptic: return "elliptic";
    case PlaneType::kParabolic: return "parabolic";
    case PlaneType::kHyperbolic: return "hyperbolic";
  }
  return "?";
}

double norm2(const MinkVec& v) { return v.a * v.a + v.b * v.b - v.c * v.c; }

double inner(const MinkVec& u, const MinkVec& v) { return u.a * v.a + u.b * v.b - u.c * v.c; }

double null_tolerance(const MinkVec& v) {
  return 1e-10 * (1.0 + v.a * v.a + v.b * v.b + v.c * v.c);
}

Causal classify_vector(const MinkVec& v) {
  if (v.a == 0.0 && v.b == 0.0 && v.c == 0.0) {
    throw Error(ErrorCode::kZeroVector, "causal type of the zero vector is undefined");
  }
  double n = norm2(v);
  if (std::abs(n) <= null_tolerance(v)) return Causal::kNull;
  return n > 0.0 ? Causal::kSpacelike : Causal::kTimelike;
}

PlaneType classify_plane(const MinkPlane& p) {
  switch (classify_vector(p.normal)) {
    case Causal::kTimelike: return PlaneType::kElliptic;
    case Causal::kNull: return PlaneType::kParabolic;
    case Causal::kSpacelike: return PlaneType::kHyperbolic;
  }
  return PlaneType::kHyperbolic;
}

MinkPlane point_plane(double x, double y) {
  if (x == 0.0 && y == 0.0) {
    throw Error(ErrorCode::kOriginPoint, "the origin (collision point) has no dual plane");
  }
  return MinkPlane{{x, y, std::hypot(x, y)}, 1.0};
}

PencilClass pencil_classify(const MinkVec& v1, const MinkVec& v2) {
  if (v1 == v2) throw Error(ErrorCode::kEqualPoints, "a pencil needs two distinct orbits");
  Causal c = classify_vector(v2 - v1);
  int count = c == Causal::kSpacelike ? 2 : (c == Causal::kNull ? 1 : 0);
  return {c, count};
}

}  // namespace kepler_sym
