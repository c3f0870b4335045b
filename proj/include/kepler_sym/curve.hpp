#pragma once

// Plane curves with derivative access. Derivatives come from truncated
// Taylor arithmetic (exact up to roundoff) when the curve is given as a
// formula, or from finite differences when only point samples exist.

#include <array>
#include <functional>
#include <vector>

#include "kepler_sym/orbit.hpp"

namespace kepler_sym {

// Taylor coefficients c_k of f(t0 + s) = sum c_k s^k, k <= kJetOrder.
// Coefficients above order() are unknown (lost to differentiation).
class Jet {
 public:
  static constexpr int kJetOrder = 6;

  Jet() = default;
  Jet(double value) { c_[0] = value; }  // NOLINT
  static Jet variable(double t0);
  // Jet with the given derivatives f(t0), f'(t0), ... (at most kJetOrder + 1).
  static Jet from_derivatives(const std::vector<double>& d);

  int order() const { return order_; }
  double value() const { return c_[0]; }
  double coeff(int k) const { return c_[static_cast<std::size_t>(k)]; }
  // k-th derivative at t0; requires k <= order().
  double derivative(int k) const;
  // d/ds, one order lower.
  Jet derive() const;

  friend Jet operator+(const Jet& u, const Jet& v);
  friend Jet operator-(const Jet& u, const Jet& v);
  friend Jet operator-(const Jet& u);
  friend Jet operator*(const Jet& u, const Jet& v);
  friend Jet operator/(const Jet& u, const Jet& v);
  friend Jet sqrt(const Jet& u);
  friend Jet sin(const Jet& u);
  friend Jet cos(const Jet& u);

 private:
  std::array<double, kJetOrder + 1> c_{};
  int order_ = kJetOrder;
};

struct JetPoint {
  Jet x;
  Jet y;
};

// Derivatives of (x(t), y(t)) up to order 4 at one parameter.
struct CurveDerivatives {
  std::array<double, 5> x;
  std::array<double, 5> y;
};

class ParametricCurve {
 public:
  using JetFn = std::function<JetPoint(const Jet& t)>;
  using PointFn = std::function<PlanePoint(double t)>;

  // Closed curves have period t1 - t0.
  static ParametricCurve from_jets(JetFn fn, double t0, double t1, bool closed);
  // Finite-difference derivatives with step h.
  static ParametricCurve from_points(PointFn fn, double t0, double t1, bool closed,
                                     double h = 1e-2);

  double t0() const { return t0_; }
  double t1() const { return t1_; }
  bool closed() const { return closed_; }
  bool analytic() const { return static_cast<bool>(jet_fn_); }

  PlanePoint point(double t) const;
  // Taylor jet at t; from_points curves return order-4 jets.
  JetPoint jet(double t) const;
  CurveDerivatives derivatives(double t) const;

 private:
  ParametricCurve() = default;

  JetFn jet_fn_;
  PointFn point_fn_;
  double t0_ = 0.0;
  double t1_ = 0.0;
  bool closed_ = false;
  double h_ = 0.0;
};

// (cx + R cos t, cy + R sin t), t in [0, 2 pi).
ParametricCurve circle_curve(double cx, double cy, double R);
// (cx + A cos t, cy + B sin t), t in [0, 2 pi).
ParametricCurve ellipse_curve(double cx, double cy, double A, double B);
// Attractive branch (cos t, sin t) / rho(t) over the sampling arc of the orbit.
ParametricCurve orbit_curve(const KeplerOrbit& o);

// Curve with support function h(phi) = h0 + sum_k (a_k cos k phi + b_k sin k phi),
// gamma = h n + h' n_perp with n = (cos phi, sin phi). Strictly convex iff
// h + h'' > 0; contains the origin iff h > 0.
struct SupportFunction {
  double h0;
  std::vector<double> cos_coeffs;  // a_1, a_2, ...
  std::vector<double> sin_coeffs;  // b_1, b_2, ...

  double h(double phi) const;
  double h_plus_h2(double phi) const;  // h + h''
};
ParametricCurve support_curve(const SupportFunction& s);

// Euclidean curvature (x'y'' - y'x'') / |gamma'|^3 as a jet of order
// jet order - 2.
Jet curvature_jet(const JetPoint& j);

}  // namespace kepler_sym
