#include "kepler_sym/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kepler_sym/error.hpp"

namespace kepler_sym {

namespace {
constexpr int N = Jet::kJetOrder;
constexpr double kPi = std::numbers::pi;
}  // namespace

Jet Jet::variable(double t0) {
  Jet j(t0);
  j.c_[1] = 1.0;
  return j;
}

Jet Jet::from_derivatives(const std::vector<double>& d) {
  if (d.empty() || d.size() > static_cast<std::size_t>(N + 1)) {
    throw Error(ErrorCode::kInvalidArgument, "jet needs 1..7 derivatives");
  }
  Jet j;
  double fact = 1.0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (k > 1) fact *= static_cast<double>(k);
    j.c_[k] = d[k] / fact;
  }
  j.order_ = static_cast<int>(d.size()) - 1;
  return j;
}

double Jet::derivative(int k) const {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return c_[static_cast<std::size_t>(k)] * f;
}

Jet Jet::derive() const {
  Jet out;
  for (int k = 0; k < N; ++k) out.c_[k] = (k + 1) * c_[k + 1];
  out.order_ = std::max(order_ - 1, 0);
  return out;
}

Jet operator+(const Jet& u, const Jet& v) {
  Jet w;
  for (int k = 0; k <= N; ++k) w.c_[k] = u.c_[k] + v.c_[k];
  w.order_ = std::min(u.order_, v.order_);
  return w;
}

Jet operator-(const Jet& u, const Jet& v) { return u + (-v); }

Jet operator-(const Jet& u) {
  Jet w = u;
  for (double& c : w.c_) c = -c;
  return w;
}

Jet operator*(const Jet& u, const Jet& v) {
  Jet w;
  for (int k = 0; k <= N; ++k) {
    double s = 0.0;
    for (int i = 0; i <= k; ++i) s += u.c_[i] * v.c_[k - i];
    w.c_[k] = s;
  }
  w.order_ = std::min(u.order_, v.order_);
  return w;
}

Jet operator/(const Jet& u, const Jet& v) {
  if (v.c_[0] == 0.0) throw Error(ErrorCode::kDivisionByZero, "jet division by zero");
  Jet w;
  for (int k = 0; k <= N; ++k) {
    double s = u.c_[k];
    for (int j = 1; j <= k; ++j) s -= v.c_[j] * w.c_[k - j];
    w.c_[k] = s / v.c_[0];
  }
  w.order_ = std::min(u.order_, v.order_);
  return w;
}

Jet sqrt(const Jet& u) {
  if (!(u.c_[0] > 0.0)) throw Error(ErrorCode::kNegativeSqrt, "jet sqrt needs a positive value");
  Jet w;
  w.c_[0] = std::sqrt(u.c_[0]);
  for (int k = 1; k <= N; ++k) {
    double s = u.c_[k];
    for (int j = 1; j < k; ++j) s -= w.c_[j] * w.c_[k - j];
    w.c_[k] = s / (2.0 * w.c_[0]);
  }
  w.order_ = u.order_;
  return w;
}

// k s_k = sum_j j u_j c_{k-j},  k c_k = -sum_j j u_j s_{k-j}
Jet sin(const Jet& u) {
  Jet s, c;
  s.c_[0] = std::sin(u.c_[0]);
  c.c_[0] = std::cos(u.c_[0]);
  for (int k = 1; k <= N; ++k) {
    double ss = 0.0, cc = 0.0;
    for (int j = 1; j <= k; ++j) {
      ss += j * u.c_[j] * c.c_[k - j];
      cc -= j * u.c_[j] * s.c_[k - j];
    }
    s.c_[k] = ss / k;
    c.c_[k] = cc / k;
  }
  s.order_ = u.order_;
  return s;
}

Jet cos(const Jet& u) {
  // cos u = sin(u + pi/2)
  Jet shifted = u;
  shifted.c_[0] += kPi / 2.0;
  Jet c = sin(shifted);
  c.c_[0] = std::cos(u.c_[0]);
  return c;
}

ParametricCurve ParametricCurve::from_jets(JetFn fn, double t0, double t1, bool closed) {
  if (!(t1 > t0)) throw Error(ErrorCode::kInvalidArgument, "curve parameter interval is empty");
  ParametricCurve c;
  c.jet_fn_ = std::move(fn);
  c.t0_ = t0;
  c.t1_ = t1;
  c.closed_ = closed;
  return c;
}

ParametricCurve ParametricCurve::from_points(PointFn fn, double t0, double t1, bool closed,
                                             double h) {
  if (!(t1 > t0)) throw Error(ErrorCode::kInvalidArgument, "curve parameter interval is empty");
  if (!(h > 0.0)) throw Error(ErrorCode::kInvalidArgument, "finite-difference step must be > 0");
  ParametricCurve c;
  c.point_fn_ = std::move(fn);
  c.t0_ = t0;
  c.t1_ = t1;
  c.closed_ = closed;
  c.h_ = h;
  return c;
}

PlanePoint ParametricCurve::point(double t) const {
  if (point_fn_) return point_fn_(t);
  JetPoint j = jet_fn_(Jet(t));
  return {j.x.value(), j.y.value()};
}

JetPoint ParametricCurve::jet(double t) const {
  if (jet_fn_) return jet_fn_(Jet::variable(t));
  // Five-point central differences; d3 and d4 are second-order accurate.
  const double h = h_;
  PlanePoint m2 = point_fn_(t - 2 * h), m1 = point_fn_(t - h), z = point_fn_(t),
             p1 = point_fn_(t + h), p2 = point_fn_(t + 2 * h);
  auto build = [h](double fm2, double fm1, double f0, double fp1, double fp2) {
    return Jet::from_derivatives({f0, (-fp2 + 8 * fp1 - 8 * fm1 + fm2) / (12 * h),
                                  (-fp2 + 16 * fp1 - 30 * f0 + 16 * fm1 - fm2) / (12 * h * h),
                                  (fp2 - 2 * fp1 + 2 * fm1 - fm2) / (2 * h * h * h),
                                  (fp2 - 4 * fp1 + 6 * f0 - 4 * fm1 + fm2) / (h * h * h * h)});
  };
  return {build(m2.x, m1.x, z.x, p1.x, p2.x), build(m2.y, m1.y, z.y, p1.y, p2.y)};
}

CurveDerivatives ParametricCurve::derivatives(double t) const {
  JetPoint j = jet(t);
  CurveDerivatives d;
  for (int k = 0; k <= 4; ++k) {
    d.x[static_cast<std::size_t>(k)] = j.x.derivative(k);
    d.y[static_cast<std::size_t>(k)] = j.y.derivative(k);
  }
  return d;
}

ParametricCurve circle_curve(double cx, double cy, double R) {
  return ellipse_curve(cx, cy, R, R);
}

ParametricCurve ellipse_curve(double cx, double cy, double A, double B) {
  return ParametricCurve::from_jets(
      [=](const Jet& t) { return JetPoint{cx + A * cos(t), cy + B * sin(t)}; }, 0.0, 2.0 * kPi,
      true);
}

ParametricCurve orbit_curve(const KeplerOrbit& o) {
  std::vector<double> th = sample_angles(o, 4);
  bool closed = o.conic_class() == ConicClass::kEllipse &&
                o.c() - std::hypot(o.a(), o.b()) > 1e-6;
  double t0, t1;
  if (closed) {
    t0 = th.front();
    t1 = t0 + 2.0 * kPi;
  } else {
    double step = th[1] - th[0];
    t0 = th.front() - step / 2.0;
    t1 = th.back() + step / 2.0;
  }
  double a = o.a(), b = o.b(), c = o.c();
  return ParametricCurve::from_jets(
      [=](const Jet& t) {
        Jet ct = cos(t), st = sin(t);
        Jet rho = a * ct + b * st + c;
        return JetPoint{ct / rho, st / rho};
      },
      t0, t1, closed);
}

double SupportFunction::h(double phi) const {
  double v = h0;
  for (std::size_t k = 0; k < cos_coeffs.size(); ++k) v += cos_coeffs[k] * std::cos((k + 1) * phi);
  for (std::size_t k = 0; k < sin_coeffs.size(); ++k) v += sin_coeffs[k] * std::sin((k + 1) * phi);
  return v;
}

double SupportFunction::h_plus_h2(double phi) const {
  double v = h0;
  for (std::size_t k = 0; k < cos_coeffs.size(); ++k) {
    double m = static_cast<double>(k + 1);
    v += (1.0 - m * m) * cos_coeffs[k] * std::cos(m * phi);
  }
  for (std::size_t k = 0; k < sin_coeffs.size(); ++k) {
    double m = static_cast<double>(k + 1);
    v += (1.0 - m * m) * sin_coeffs[k] * std::sin(m * phi);
  }
  return v;
}

ParametricCurve support_curve(const SupportFunction& s) {
  return ParametricCurve::from_jets(
      [s](const Jet& phi) {
        Jet h = s.h0, hp = 0.0;
        for (std::size_t k = 0; k < s.cos_coeffs.size(); ++k) {
          double m = static_cast<double>(k + 1);
          Jet c = cos(m * phi), sn = sin(m * phi);
          h = h + s.cos_coeffs[k] * c;
          hp = hp - (m * s.cos_coeffs[k]) * sn;
        }
        for (std::size_t k = 0; k < s.sin_coeffs.size(); ++k) {
          double m = static_cast<double>(k + 1);
          Jet c = cos(m * phi), sn = sin(m * phi);
          h = h + s.sin_coeffs[k] * sn;
          hp = hp + (m * s.sin_coeffs[k]) * c;
        }
        Jet c = cos(phi), sn = sin(phi);
        return JetPoint{h * c - hp * sn, h * sn + hp * c};
      },
      0.0, 2.0 * kPi, true);
}

Jet curvature_jet(const JetPoint& j) {
  Jet x1 = j.x.derive(), y1 = j.y.derive();
  Jet x2 = x1.derive(), y2 = y1.derive();
  Jet speed2 = x1 * x1 + y1 * y1;
  return (x1 * y2 - y1 * x2) / (speed2 * sqrt(speed2));
}

}  // namespace kepler_sym
