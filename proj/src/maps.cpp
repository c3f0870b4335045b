#include "kepler_sym/maps.hpp"

#include <cmath>

#include "kepler_sym/error.hpp"

namespace kepler_sym {

namespace {

void require_positive_energy(double E) {
  if (!(E > 0.0)) throw Error(ErrorCode::kInvalidArgument, "Hill embeddings need E > 0");
}

}  // namespace

PlanePoint square(const PlanePoint& p) {
  if (p.x == 0.0 && p.y == 0.0) throw Error(ErrorCode::kOriginPoint, "square: point at the origin");
  return {p.x * p.x - p.y * p.y, 2.0 * p.x * p.y};
}

MinkVec square_line_dual(const MinkVec& line) {
  double u = line.a;
  double v = line.b;
  return {(u * u - v * v) / 2.0, u * v, (u * u + v * v) / 2.0};
}

PlanePoint flatten_M(const PlanePoint& p, double M) {
  if (M == 0.0) throw Error(ErrorCode::kInvalidArgument, "flatten_M needs M != 0");
  double m2 = M * M;
  double den = 1.0 - p.r() / m2;
  if (std::abs(den) <= 1e-12) {
    throw Error(ErrorCode::kSingularRadius, "flatten_M is singular at r = M^2");
  }
  return {p.x / den, p.y / den};
}

MinkVec flatten_M_dual(const MinkVec& v, double M) {
  if (M == 0.0) throw Error(ErrorCode::kInvalidArgument, "flatten_M needs M != 0");
  return {v.a, v.b, v.c - 1.0 / (M * M)};
}

PlanePoint hill_embed(const PlanePoint& p, double E) {
  require_positive_energy(E);
  double den = 1.0 + 2.0 * E * p.r();
  return {p.x / den, p.y / den};
}

MinkVec hill_dual(const MinkVec& canonical, double E) {
  require_positive_energy(E);
  return {canonical.a, canonical.b, canonical.c + 2.0 * E};
}

MinkVec hill_dual_reflection(const MinkVec& signed_rep, double E) {
  require_positive_energy(E);
  return {signed_rep.a, signed_rep.b, 2.0 * E - signed_rep.c};
}

PlanePoint repel_embed(const PlanePoint& p, double E) {
  require_positive_energy(E);
  double den = 1.0 - 2.0 * E * p.r();
  if (std::abs(den) <= 1e-12) {
    throw Error(ErrorCode::kSingularRadius, "repel_embed is singular at r = 1/(2E)");
  }
  return {p.x / den, p.y / den};
}

PlanePoint parabola_chart(double X, double Y) {
  if (Y == 0.0) throw Error(ErrorCode::kSingularRadius, "parabola_chart is singular at Y = 0");
  return {(X * X - 1.0) / Y, 2.0 * X / Y};
}

MinkVec parabola_chart_dual(double A, double B, double C) {
  return {(A - C) / 2.0, B / 2.0, (A + C) / 2.0};
}

}  // namespace kepler_sym
