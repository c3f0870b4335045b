#include "kepler_sym/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "kepler_sym/error.hpp"

namespace kepler_sym {

namespace {

constexpr double kPi = std::numbers::pi;

void require_ellipse(const KeplerOrbit& o) {
  if (o.conic_class() != ConicClass::kEllipse) {
    throw Error(ErrorCode::kNotEllipse, "requires an elliptic orbit");
  }
}

// Jets of the tangent-line dual at one parameter.
JetPoint dual_jet(const JetPoint& j) {
  Jet x1 = j.x.derive(), y1 = j.y.derive();
  Jet den = j.x * y1 - j.y * x1;
  double scale = std::hypot(j.x.value(), j.y.value()) * std::hypot(x1.value(), y1.value());
  if (std::abs(den.value()) <= 1e-14 * scale) {
    throw Error(ErrorCode::kTangentThroughOrigin, "tangent line passes through the origin");
  }
  return {y1 / den, -x1 / den};
}

// Derivative of the dual curvature with respect to the curve parameter.
double dual_curvature_slope(const ParametricCurve& gamma, double t) {
  return curvature_jet(dual_jet(gamma.jet(t))).coeff(1);
}

template <class Fn>
double bisect(const Fn& f, double lo, double hi, double flo) {
  for (int i = 0; i < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++i) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if ((fm >= 0.0) == (flo >= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Circle dual_of_orbit(const KeplerOrbit& o) { return {o.a(), o.b(), o.c()}; }

ParametricCurve dual_curve(const ParametricCurve& gamma) {
  return ParametricCurve::from_jets(
      [gamma](const Jet& t) {
        // Only the identity jet (from jet()) and constants (from point()) occur.
        JetPoint d = dual_jet(gamma.jet(t.value()));
        if (t.coeff(1) == 0.0) return JetPoint{d.x.value(), d.y.value()};
        if (t.coeff(1) != 1.0) {
          throw Error(ErrorCode::kInvalidArgument, "dual_curve cannot be reparametrized");
        }
        return d;
      },
      gamma.t0(), gamma.t1(), gamma.closed());
}

Jet2Polar polar_jet(const ParametricCurve& gamma, double t) {
  JetPoint j = gamma.jet(t);
  Jet x1 = j.x.derive(), y1 = j.y.derive();
  Jet r2 = j.x * j.x + j.y * j.y;
  Jet rho = 1.0 / sqrt(r2);
  Jet theta_t = (j.x * y1 - j.y * x1) / r2;
  if (std::abs(theta_t.value()) <= 1e-14 * std::hypot(x1.value(), y1.value()) * rho.value()) {
    throw Error(ErrorCode::kTangentThroughOrigin, "polar angle is stationary (radial tangent)");
  }
  Jet rho_1 = rho.derive() / theta_t;
  Jet rho_2 = rho_1.derive() / theta_t;
  return {std::atan2(j.y.value(), j.x.value()), rho.value(), rho_1.value(), rho_2.value()};
}

KeplerOrbit osculating_orbit(const Jet2Polar& j) {
  double c = j.rho + j.rho2;
  if (std::abs(c) <= 1e-12 * (std::abs(j.rho) + std::abs(j.rho2))) {
    throw Error(ErrorCode::kOsculatingLine, "osculating orbit degenerates to a line");
  }
  double ct = std::cos(j.theta), st = std::sin(j.theta);
  return KeplerOrbit::from_abc(-j.rho2 * ct - j.rho1 * st, -j.rho2 * st + j.rho1 * ct, c);
}

std::vector<double> kepler_vertices(const ParametricCurve& gamma, int grid) {
  if (grid < 8) throw Error(ErrorCode::kInvalidArgument, "vertex grid needs >= 8 points");
  const double L = gamma.t1() - gamma.t0();
  const int n = gamma.closed() ? grid : grid + 1;
  std::vector<double> ts(static_cast<std::size_t>(n)), slope(ts.size());
  double max_kappa = 0.0, max_slope = 0.0;
  for (int i = 0; i < n; ++i) {
    double t = gamma.t0() + L * i / grid;
    Jet k = curvature_jet(dual_jet(gamma.jet(t)));
    ts[i] = t;
    slope[i] = k.coeff(1);
    max_kappa = std::max(max_kappa, std::abs(k.value()));
    max_slope = std::max(max_slope, std::abs(slope[i]));
  }
  if (max_slope <= 1e-9 * max_kappa) {
    throw Error(ErrorCode::kDegenerateCurve,
                "dual curvature is constant: the curve is a Kepler orbit");
  }
  auto f = [&](double t) { return dual_curvature_slope(gamma, t); };
  std::vector<double> out;
  int segments = gamma.closed() ? n : n - 1;
  for (int i = 0; i < segments; ++i) {
    int j = (i + 1) % n;
    double lo = ts[i], hi = j == 0 ? gamma.t0() + L : ts[j];
    if ((slope[i] >= 0.0) == (slope[j] >= 0.0)) continue;
    double root = bisect(f, lo, hi, slope[i]);
    if (gamma.closed() && root >= gamma.t0() + L) root -= L;
    out.push_back(root);
  }
  std::sort(out.begin(), out.end());
  return out;
}

NestedResult nested(const KeplerOrbit& o1, const KeplerOrbit& o2, int samples) {
  bool certified = o1.conic_class() == ConicClass::kEllipse &&
                   o2.conic_class() == ConicClass::kEllipse;
  int pos = 0, neg = 0, touch = 0;
  for (int i = 0; i < samples; ++i) {
    double th = 2.0 * kPi * i / samples;
    double r1 = o1.rho(th), r2 = o2.rho(th);
    if (!(r1 > 0.0 && r2 > 0.0)) continue;
    double h = r1 - r2;
    double tol = 1e-12 * (std::abs(r1) + std::abs(r2));
    if (h > tol) ++pos;
    else if (h < -tol) ++neg;
    else ++touch;
  }
  bool disjoint = touch == 0 && (pos == 0 || neg == 0) && pos + neg > 0;
  return {disjoint, certified};
}

TaitKneserReport tait_kneser(const ParametricCurve& gamma, double ta, double tb, int k, int grid) {
  if (!(tb > ta) || k < 2) throw Error(ErrorCode::kInvalidArgument, "tait_kneser needs ta < tb, k >= 2");
  const double L = gamma.t1() - gamma.t0();
  const double eps = 1e-9 * (tb - ta);
  for (double v : kepler_vertices(gamma, grid)) {
    for (int w = -2; w <= 2; ++w) {
      double vv = v + (gamma.closed() ? w * L : 0.0);
      if (vv > ta + eps && vv < tb - eps) {
        throw Error(ErrorCode::kVertexInArc,
                    "a Kepler vertex lies inside the arc at t = " + std::to_string(vv));
      }
    }
  }
  TaitKneserReport rep;
  for (int i = 1; i <= k; ++i) {
    double t = ta + (tb - ta) * i / (k + 1);
    rep.parameters.push_back(t);
    rep.orbits.push_back(osculating_orbit(polar_jet(gamma, t)));
  }
  for (std::size_t i = 0; i < rep.orbits.size(); ++i) {
    for (std::size_t j = i + 1; j < rep.orbits.size(); ++j) {
      ++rep.pairs;
      NestedResult nr = nested(rep.orbits[i], rep.orbits[j]);
      if (!nr.certified) ++rep.uncertified_pairs;
      if (nr.nested) ++rep.nested_pairs;
      MinkVec chord = rep.orbits[i].dual() - rep.orbits[j].dual();
      if (norm2(chord) < 0.0) ++rep.timelike_chords;
    }
  }
  return rep;
}

PlanePoint eccentric_point(const KeplerOrbit& o, double u) {
  require_ellipse(o);
  OrbitGeometry g = geometry(o);
  double A = *g.semi_major, B = *g.semi_minor;
  double xp = A * (std::cos(u) - g.e), yp = B * std::sin(u);
  double c = std::cos(g.pericenter_angle), s = std::sin(g.pericenter_angle);
  return {c * xp - s * yp, s * xp + c * yp};
}

double eccentric_anomaly(const KeplerOrbit& o, const PlanePoint& p) {
  require_ellipse(o);
  OrbitGeometry g = geometry(o);
  double c = std::cos(g.pericenter_angle), s = std::sin(g.pericenter_angle);
  double xp = c * p.x + s * p.y, yp = -s * p.x + c * p.y;
  return std::atan2(yp / *g.semi_minor, xp / *g.semi_major + g.e);
}

LambertSides lambert_check(const KeplerOrbit& o, double u1, double u2) {
  require_ellipse(o);
  double B = 2.0 * *geometry(o).semi_minor;
  double sh = std::sin(0.5 * (u1 - u2));
  PlanePoint p1 = eccentric_point(o, u1), p2 = eccentric_point(o, u2);
  double r12 = std::hypot(p1.x - p2.x, p1.y - p2.y);
  double dr = p1.r() - p2.r();
  return {B * B * sh * sh, r12 * r12 - dr * dr};
}

namespace {

Rational checked(std::optional<Rational> q) {
  if (!q) throw Error(ErrorCode::kInvalidArgument, "rational overflow");
  return *q;
}
Rational operator+(const Rational& x, const Rational& y) { return checked(add(x, y)); }
Rational operator-(const Rational& x, const Rational& y) { return checked(sub(x, y)); }
Rational operator*(const Rational& x, const Rational& y) { return checked(mul(x, y)); }
Rational operator/(const Rational& x, const Rational& y) { return checked(div(x, y)); }

}  // namespace

ExactLambertSides lambert_check_exact(const Rational& a, const Rational& b, const Rational& c,
                                      const Rational& cos1, const Rational& sin1,
                                      const Rational& cos2, const Rational& sin2) {
  const Rational one(1);
  Rational gap = c * c - a * a - b * b;
  if (gap.sign() <= 0 || c.is_zero()) throw Error(ErrorCode::kNotEllipse, "requires an ellipse");
  if (!(cos1 * cos1 + sin1 * sin1 == one) || !(cos2 * cos2 + sin2 * sin2 == one)) {
    throw Error(ErrorCode::kInvalidArgument, "(cos u, sin u) must lie on the unit circle");
  }
  // In the pericenter frame with A = |c|/gap, B^2 = 1/gap, e^2 = (a^2+b^2)/c^2:
  //   lhs = 4 B^2 (1 - cos(u1 - u2)) / 2
  //   r12^2 = A^2 (dcos)^2 + B^2 (dsin)^2,  (r1 - r2)^2 = A^2 e^2 (dcos)^2.
  Rational A = (c.sign() > 0 ? c : negate(c)) / gap;
  Rational B2 = one / gap;
  Rational e2 = (a * a + b * b) / (c * c);
  Rational dcos = cos1 - cos2, dsin = sin1 - sin2;
  Rational lhs = Rational(2) * B2 * (one - cos1 * cos2 - sin1 * sin2);
  Rational rhs = A * A * dcos * dcos + B2 * dsin * dsin - A * A * e2 * dcos * dcos;
  return {lhs, rhs};
}

KeplerOrbit envelope_minor_axis(double B, double x1) {
  if (!(B > 0.0) || !(x1 > 0.0)) throw Error(ErrorCode::kInvalidArgument, "needs B, x1 > 0");
  double p = B * B / (4.0 * x1);
  return KeplerOrbit::from_abc(-1.0 / (2.0 * p), 0.0, 1.0 / (2.0 * p));
}

std::vector<KeplerOrbit> minor_axis_family(double B, double x1, int n) {
  if (!(B > 0.0) || !(x1 > 0.0) || n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "needs B, x1 > 0 and n >= 2");
  }
  double s = 1.0 / x1, g = 4.0 / (B * B);
  std::vector<KeplerOrbit> out;
  for (int i = 0; i < n; ++i) {
    double b = -s + 2.0 * s * i / (n - 1);
    double q = (g + b * b) / s;  // c - a
    out.push_back(KeplerOrbit::from_abc((s - q) / 2.0, b, (s + q) / 2.0));
  }
  return out;
}

KeplerOrbit envelope_energy(double E, double x0) {
  if (!(E < 0.0) || !(x0 > 0.0)) throw Error(ErrorCode::kInvalidArgument, "needs E < 0, x0 > 0");
  if (1.0 + E * x0 <= 0.0) {
    throw Error(ErrorCode::kOutsideHillRegion, "fixed point lies outside the Hill region");
  }
  double p = (1.0 + E * x0) / (x0 * E * E);
  return KeplerOrbit::from_abc(-1.0 / (2.0 * p), 0.0, 1.0 / (2.0 * p) - E);
}

std::vector<KeplerOrbit> energy_family(double E, double x0, int n) {
  envelope_energy(E, x0);  // validates
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "needs n >= 2");
  std::vector<KeplerOrbit> out;
  for (int i = 0; i < n; ++i) {
    double b = (-1.0 + 2.0 * i / (n - 1)) / x0;
    double c = (1.0 / (x0 * x0) + b * b) * x0 / (2.0 * (1.0 + E * x0));
    out.push_back(KeplerOrbit::from_abc(1.0 / x0 - c, b, c));
  }
  return out;
}

PlanePoint second_focus(const KeplerOrbit& o) {
  require_ellipse(o);
  OrbitGeometry g = geometry(o);
  double d = 2.0 * *g.semi_major * g.e;
  return {-d * std::cos(g.pericenter_angle), -d * std::sin(g.pericenter_angle)};
}

HookeEnvelope envelope_hooke(double Delta, const PlanePoint& P) {
  if (!(Delta > 0.0)) throw Error(ErrorCode::kInvalidArgument, "needs Delta > 0");
  double R = P.r();
  if (R == 0.0) throw Error(ErrorCode::kOriginPoint, "fixed point at the origin");
  return {{-P.y / R, P.x / R}, Delta / (kPi * R)};
}

ParametricCurve hooke_member(double Delta, double shear, const PlanePoint& P) {
  envelope_hooke(Delta, P);  // validates
  double R = P.r();
  double k = Delta / (kPi * R * R);
  double c = P.x / R, s = P.y / R;
  return ParametricCurve::from_jets(
      [=](const Jet& t) {
        Jet u = R * (cos(t) + (shear * k) * sin(t));
        Jet v = (R * k) * sin(t);
        return JetPoint{c * u - s * v, s * u + c * v};
      },
      0.0, 2.0 * kPi, true);
}

Contact contact(const ParametricCurve& member, const ImplicitFn& F, const ImplicitGrad& grad,
                double tol, int grid) {
  const double L = member.t1() - member.t0();
  const int n = member.closed() ? grid : grid + 1;
  auto h = [&](double t) { return F(member.point(t)); };
  auto hp = [&](double t) {
    JetPoint j = member.jet(t);
    PlanePoint g = grad({j.x.value(), j.y.value()});
    return g.x * j.x.coeff(1) + g.y * j.y.coeff(1);
  };
  std::vector<double> ts(static_cast<std::size_t>(n)), slope(ts.size());
  double hmin = 0.0, hmax = 0.0;
  for (int i = 0; i < n; ++i) {
    ts[i] = member.t0() + L * i / grid;
    slope[i] = hp(ts[i]);
    double v = h(ts[i]);
    if (i == 0 || v < hmin) hmin = v;
    if (i == 0 || v > hmax) hmax = v;
  }
  Contact best{std::numeric_limits<double>::infinity(), member.t0(), false};
  int segments = member.closed() ? n : n - 1;
  for (int i = 0; i < segments; ++i) {
    int j = (i + 1) % n;
    if ((slope[i] >= 0.0) == (slope[j] >= 0.0)) continue;
    double hi = j == 0 ? member.t0() + L : ts[j];
    double t = bisect(hp, ts[i], hi, slope[i]);
    double v = h(t);
    hmin = std::min(hmin, v);
    hmax = std::max(hmax, v);
    if (std::abs(v) < best.residual) best = {std::abs(v), t, false};
  }
  best.crossing = hmin < -tol && hmax > tol;
  return best;
}

Contact contact(const KeplerOrbit& member, const KeplerOrbit& envelope, double tol) {
  double a = envelope.a(), b = envelope.b(), c = envelope.c();
  return contact(
      orbit_curve(member),
      [=](const PlanePoint& q) { return a * q.x + b * q.y + c * q.r() - 1.0; },
      [=](const PlanePoint& q) {
        double r = q.r();
        return PlanePoint{a + c * q.x / r, b + c * q.y / r};
      },
      tol);
}

Contact contact(const ParametricCurve& member, const HookeEnvelope& env, int sign, double tol) {
  double nx = sign * env.normal.x / env.offset, ny = sign * env.normal.y / env.offset;
  return contact(
      member, [=](const PlanePoint& q) { return nx * q.x + ny * q.y - 1.0; },
      [=](const PlanePoint&) { return PlanePoint{nx, ny}; }, tol);
}

double curved_energy(double E, double M, double k) { return E + k * M * M / 2.0; }

double curved_quadric_check(const MinkVec& v, double E_k, double k) {
  double d = v.c - std::abs(E_k);
  return std::abs(v.a * v.a + v.b * v.b - d * d + E_k * E_k + k);
}

}  // namespace kepler_sym
