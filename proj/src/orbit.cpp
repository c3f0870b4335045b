#include "kepler_sym/orbit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "kepler_sym/error.hpp"

namespace kepler_sym {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kArcFloor = 1e-6;
}  // namespace

double PlanePoint::r() const { return std::hypot(x, y); }
double PlanePoint::theta() const { return std::atan2(y, x); }
PlanePoint PlanePoint::polar(double r, double theta) {
  return {r * std::cos(theta), r * std::sin(theta)};
}

std::string_view to_string(ConicClass c) {
  switch (c) {
    case ConicClass::kEllipse: return "ellipse";
    case ConicClass::kParabola: return "parabola";
    case ConicClass::kHyperbola: return "hyperbola";
  }
  return "?";
}

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::kOnAttractive: return "on-attractive";
    case Membership::kOnRepelling: return "on-repelling";
    case Membership::kOff: return "off";
  }
  return "?";
}

KeplerOrbit KeplerOrbit::from_abc(double a, double b, double c) {
  if (a == 0.0 && b == 0.0 && c == 0.0) {
    throw Error(ErrorCode::kZeroTriple, "(0,0,0) is the line at infinity, not a Kepler orbit");
  }
  if (c == 0.0) throw Error(ErrorCode::kLineNotOrbit, "line, not a Kepler orbit (c = 0)");
  return c > 0.0 ? KeplerOrbit(a, b, c) : KeplerOrbit(a, b, -c);
}

ConicClass KeplerOrbit::conic_class() const {
  switch (classify_vector(dual())) {
    case Causal::kTimelike: return ConicClass::kEllipse;
    case Causal::kNull: return ConicClass::kParabola;
    case Causal::kSpacelike: return ConicClass::kHyperbola;
  }
  return ConicClass::kHyperbola;
}

double KeplerOrbit::rho(double theta) const {
  return a_ * std::cos(theta) + b_ * std::sin(theta) + c_;
}

double KeplerOrbit::rho_repelling(double theta) const {
  return a_ * std::cos(theta) + b_ * std::sin(theta) - c_;
}

Conserved conserved(const KeplerOrbit& o) {
  double s2 = o.a() * o.a() + o.b() * o.b();
  return {std::sqrt(s2) / o.c(), (s2 - o.c() * o.c()) / (2.0 * o.c()), 1.0 / std::sqrt(o.c())};
}

double radius(const KeplerOrbit& o, double theta) {
  double rho = o.rho(theta);
  if (rho <= 0.0) {
    throw Error(ErrorCode::kOutsideBranch, "outside attractive branch domain (rho <= 0)");
  }
  return 1.0 / rho;
}

std::vector<double> sample_angles(const KeplerOrbit& o, int n) {
  if (n < 3) throw Error(ErrorCode::kInvalidArgument, "sampling needs n >= 3");
  double s = std::hypot(o.a(), o.b());
  double theta0 = std::atan2(o.b(), o.a());
  std::vector<double> out(static_cast<std::size_t>(n));
  // rho = c + s cos(theta - theta0) exceeds kArcFloor everywhere iff c - s > kArcFloor.
  if (o.c() - s > kArcFloor) {
    for (int k = 0; k < n; ++k) out[k] = theta0 + 2.0 * kPi * k / n;
    return out;
  }
  double half = std::acos(std::clamp((kArcFloor - o.c()) / s, -1.0, 1.0));
  for (int k = 0; k < n; ++k) out[k] = theta0 - half + (k + 0.5) * (2.0 * half / n);
  return out;
}

std::vector<PlanePoint> sample(const KeplerOrbit& o, int n) {
  std::vector<PlanePoint> out;
  out.reserve(static_cast<std::size_t>(n));
  for (double th : sample_angles(o, n)) out.push_back(PlanePoint::polar(1.0 / o.rho(th), th));
  return out;
}

std::vector<PlanePoint> sample_repelling(const KeplerOrbit& o, int n) {
  if (n < 3) throw Error(ErrorCode::kInvalidArgument, "sampling needs n >= 3");
  double s = std::hypot(o.a(), o.b());
  if (s - o.c() <= kArcFloor) {
    throw Error(ErrorCode::kOutsideBranch, "only hyperbolas have a repelling branch");
  }
  double theta0 = std::atan2(o.b(), o.a());
  double half = std::acos((kArcFloor + o.c()) / s);
  std::vector<PlanePoint> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    double th = theta0 - half + (k + 0.5) * (2.0 * half / n);
    out.push_back(PlanePoint::polar(1.0 / o.rho_repelling(th), th));
  }
  return out;
}

Membership contains(const KeplerOrbit& o, const PlanePoint& p, double tol) {
  double lin = o.a() * p.x + o.b() * p.y;
  double r = p.r();
  if (std::abs(lin + o.c() * r - 1.0) <= tol) return Membership::kOnAttractive;
  if (std::abs(lin - o.c() * r - 1.0) <= tol) return Membership::kOnRepelling;
  return Membership::kOff;
}

OrbitGeometry geometry(const KeplerOrbit& o) {
  Conserved k = conserved(o);
  OrbitGeometry g{k.e, std::nullopt, std::nullopt, 2.0 / o.c(),
                  std::atan2(o.b(), o.a()), k.E, k.M};
  double gap = o.c() * o.c() - o.a() * o.a() - o.b() * o.b();
  switch (o.conic_class()) {
    case ConicClass::kEllipse:
      g.semi_major = o.c() / gap;
      g.semi_minor = 1.0 / std::sqrt(gap);
      break;
    case ConicClass::kHyperbola:
      g.semi_major = o.c() / -gap;
      g.semi_minor = 1.0 / std::sqrt(-gap);
      break;
    case ConicClass::kParabola:
      break;
  }
  return g;
}

ConicFit fit(std::span<const PlanePoint> points) {
  if (points.size() < 3) throw Error(ErrorCode::kInvalidArgument, "conic fit needs >= 3 points");
  Eigen::MatrixXd design(static_cast<Eigen::Index>(points.size()), 3);
  for (std::size_t i = 0; i < points.size(); ++i) {
    double r = points[i].r();
    if (r == 0.0) throw Error(ErrorCode::kInvalidArgument, "conic fit point at the origin");
    design.row(static_cast<Eigen::Index>(i)) << points[i].x, points[i].y, r;
  }
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(design.rows());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(2) <= 1e-12 * sv(0)) {
    throw Error(ErrorCode::kRankDeficient, "conic fit is rank deficient (points coincide)");
  }
  Eigen::Vector3d sol = svd.solve(ones);
  double residual = (design * sol - ones).cwiseAbs().maxCoeff();
  MinkVec d{sol(0), sol(1), sol(2)};
  bool line = std::abs(d.c) <= 1e-8 * std::hypot(d.a, d.b);
  return ConicFit{d, line, !line && d.c < 0.0, residual};
}

ConePoint lift(const PlanePoint& p, int sheet) {
  if (sheet != 1 && sheet != -1) throw Error(ErrorCode::kInvalidArgument, "sheet must be +1 or -1");
  return {p.x, p.y, sheet * p.r()};
}

PlanePoint project(const ConePoint& q) { return {q.x, q.y}; }

double energy(const PhaseState& s) {
  return 0.5 * (s.vx * s.vx + s.vy * s.vy) - 1.0 / std::hypot(s.x, s.y);
}

double angular_momentum(const PhaseState& s) { return s.x * s.vy - s.y * s.vx; }

FlowPlan default_flow_plan(const KeplerOrbit& o) {
  double s = std::hypot(o.a(), o.b());
  double r_peri = 1.0 / (s + o.c());
  double span;
  if (o.conic_class() == ConicClass::kEllipse) {
    double semi_major = o.c() / (o.c() * o.c() - s * s);
    span = 2.0 * kPi * std::pow(semi_major, 1.5);
  } else {
    span = 20.0 * std::pow(r_peri, 1.5);
  }
  // 1e-4 of the span, but never coarser than 2e-3 pericenter time units.
  double dt = std::min(1e-4 * span, 2e-3 * std::pow(r_peri, 1.5));
  int steps = static_cast<int>(std::min(std::ceil(span / dt), 4e6));
  return {steps, span / steps};
}

std::vector<PhaseState> newton_flow(const KeplerOrbit& o, int steps, double dt) {
  Conserved k = conserved(o);
  double s = std::hypot(o.a(), o.b());
  double r0 = 1.0 / (s + o.c());
  double th0 = std::atan2(o.b(), o.a());
  double v0 = k.M / r0;

  using V4 = Eigen::Vector4d;
  auto rhs = [](const V4& u) {
    double r2 = u(0) * u(0) + u(1) * u(1);
    double inv_r3 = 1.0 / (r2 * std::sqrt(r2));
    return V4(u(2), u(3), -u(0) * inv_r3, -u(1) * inv_r3);
  };

  V4 u(r0 * std::cos(th0), r0 * std::sin(th0), -v0 * std::sin(th0), v0 * std::cos(th0));
  std::vector<PhaseState> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  out.push_back({0.0, u(0), u(1), u(2), u(3)});
  for (int i = 1; i <= steps; ++i) {
    V4 k1 = rhs(u);
    V4 k2 = rhs(u + 0.5 * dt * k1);
    V4 k3 = rhs(u + 0.5 * dt * k2);
    V4 k4 = rhs(u + dt * k3);
    u += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    double r = std::hypot(u(0), u(1));
    if (!(r > 1e-9 * r0) || !u.allFinite()) {
      throw Error(ErrorCode::kStepFailure, "Newton flow reached the collision singularity");
    }
    out.push_back({i * dt, u(0), u(1), u(2), u(3)});
  }
  return out;
}

}  // namespace kepler_sym
