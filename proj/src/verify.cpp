#include "kepler_sym/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <json.hpp>
#include <limits>
#include <numbers>
#include <sstream>

#include "kepler_sym/curve.hpp"
#include "kepler_sym/error.hpp"
#include "kepler_sym/invariants.hpp"
#include "kepler_sym/maps.hpp"
#include "kepler_sym/minkowski.hpp"
#include "kepler_sym/orbit.hpp"
#include "kepler_sym/random.hpp"
#include "kepler_sym/symmetry.hpp"
#include "kepler_sym/theorems.hpp"
#include "oracles/oracles.hpp"

namespace kepler_sym {

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  double residual;
  std::string detail;
};

struct Case {
  std::string name;
  double tol;
  std::function<Outcome(std::uint64_t seed)> run;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// ------------------------------------------------------------ random inputs

using Rng = std::mt19937_64;

KeplerOrbit random_ellipse(Rng& g, double emax = 0.9) {
  double c = uniform(g, 0.5, 2.0), e = uniform(g, 0.0, emax), phi = uniform(g, -kPi, kPi);
  return KeplerOrbit::from_abc(c * e * std::cos(phi), c * e * std::sin(phi), c);
}

// Cycles ellipse, parabola, hyperbola by index.
KeplerOrbit random_orbit(Rng& g, int index) {
  double c = uniform(g, 0.5, 2.0), phi = uniform(g, -kPi, kPi);
  double e = index % 3 == 0 ? uniform(g, 0.0, 0.9) : index % 3 == 1 ? 1.0 : uniform(g, 1.2, 3.0);
  return KeplerOrbit::from_abc(c * e * std::cos(phi), c * e * std::sin(phi), c);
}

PlanePoint random_point(Rng& g, double rmin = 0.2, double rmax = 5.0) {
  return PlanePoint::polar(uniform(g, rmin, rmax), uniform(g, -kPi, kPi));
}

AlgebraElement random_algebra(Rng& g, double scale) {
  std::array<double, 7> x;
  for (double& v : x) v = uniform(g, -scale, scale);
  return AlgebraElement(x);
}

double dist(const PlanePoint& p, const PlanePoint& q) { return std::hypot(p.x - q.x, p.y - q.y); }
double dist(const MinkVec& u, const MinkVec& v) {
  return std::sqrt((u.a - v.a) * (u.a - v.a) + (u.b - v.b) * (u.b - v.b) + (u.c - v.c) * (u.c - v.c));
}
double norm(const MinkVec& v) { return std::sqrt(v.a * v.a + v.b * v.b + v.c * v.c); }

// ------------------------------------------------------------ symmetry

Outcome vf_plane_closed_form(std::uint64_t seed) {
  double worst = 0.0;
  int at = 0;
  for (int i = 1; i <= 7; ++i) {
    Rng g = stream_rng(seed, "vf_plane", static_cast<std::uint64_t>(i));
    for (int k = 0; k < 200; ++k) {
      PlanePoint p = random_point(g);
      int sheet = k % 2 == 0 ? 1 : -1;
      PlaneVector v = vf_plane(AlgebraElement::basis(i), p, sheet);
      PlanePoint w = oracle::plane_field(i, p, sheet);
      double err = std::hypot(v.vx - w.x, v.vy - w.y) / std::max(1.0, std::hypot(w.x, w.y));
      if (err > worst) worst = err, at = i;
    }
  }
  return {worst, at ? "worst generator x" + std::to_string(at) : ""};
}

Outcome vf_dual_closed_form(std::uint64_t seed) {
  double worst = 0.0;
  int at = 0;
  for (int i = 1; i <= 7; ++i) {
    Rng g = stream_rng(seed, "vf_dual", static_cast<std::uint64_t>(i));
    for (int k = 0; k < 200; ++k) {
      MinkVec v{uniform(g, -2, 2), uniform(g, -2, 2), uniform(g, -2, 2)};
      MinkVec w = vf_dual(AlgebraElement::basis(i), v);
      MinkVec ref = oracle::dual_field(i, v);
      double err = dist(w, ref) / std::max(1.0, norm(ref));
      if (err > worst) worst = err, at = i;
    }
  }
  return {worst, at ? "worst generator x" + std::to_string(at) : ""};
}

Outcome commuting_square(std::uint64_t seed) {
  double worst = 0.0;
  int exits = 0, mapped = 0;
  for (int k = 0; k < 100; ++k) {
    Rng g = stream_rng(seed, "commuting_square", static_cast<std::uint64_t>(k));
    GroupElement el = exp(random_algebra(g, 0.3));
    KeplerOrbit o = random_orbit(g, k);
    MinkVec image = act_dual(el, o.dual());
    for (const PlanePoint& p : sample(o, 20)) {
      try {
        PlanePoint q = act_plane(el, p, 1);
        if (!std::isfinite(q.x) || !std::isfinite(q.y)) {
          return {std::numeric_limits<double>::infinity(), "non-finite image without error"};
        }
        worst = std::max(worst, oracle::conic_residual(image, q));
        ++mapped;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kChartExit && e.code() != ErrorCode::kVertexCrossing) throw;
        ++exits;
      }
    }
  }
  return {worst, std::to_string(mapped) + " mapped, " + std::to_string(exits) + " chart exits"};
}

Mat4 commutator(const Mat4& x, const Mat4& y) { return x * y - y * x; }

Outcome bracket_closure(std::uint64_t) {
  // Basis matrices plus all brackets, flattened to rows of R^16.
  std::vector<Mat4> mats;
  for (int i = 1; i <= 7; ++i) mats.push_back(AlgebraElement::basis(i).matrix());
  for (int i = 1; i <= 7; ++i) {
    for (int j = i + 1; j <= 7; ++j) {
      mats.push_back(commutator(AlgebraElement::basis(i).matrix(), AlgebraElement::basis(j).matrix()));
    }
  }
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(mats.size()), 16);
  for (std::size_t k = 0; k < mats.size(); ++k) {
    for (int e = 0; e < 16; ++e) rows(static_cast<Eigen::Index>(k), e) = mats[k](e / 4, e % 4);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows);
  const auto& s = svd.singularValues();
  double gap = s(6) / std::max(s(7), 1e-300);
  // Every bracket also maps back to algebra coordinates.
  for (int i = 1; i <= 7; ++i) {
    for (int j = 1; j <= 7; ++j) bracket(AlgebraElement::basis(i), AlgebraElement::basis(j));
  }
  return {1.0 / gap, "rank 7 gap " + fmt(gap)};
}

Outcome one_parameter_subgroup(std::uint64_t seed) {
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    Rng g = stream_rng(seed, "subgroup", static_cast<std::uint64_t>(k));
    AlgebraElement X = random_algebra(g, 1.0);
    double t1 = uniform(g, -1, 1), t2 = uniform(g, -1, 1);
    Mat4 lhs = (exp(X, t1) * exp(X, t2)).matrix();
    Mat4 rhs = exp(X, t1 + t2).matrix();
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff() / std::max(1.0, rhs.cwiseAbs().maxCoeff()));
  }
  return {worst, ""};
}

Outcome flow_vs_exp(std::uint64_t) {
  AlgebraElement X = AlgebraElement::basis(7);
  PlanePoint a = flow(X, {1.0, 0.0}, 0.1, 1);
  PlanePoint b = act_plane(exp(X, 0.1), {1.0, 0.0}, 1);
  return {dist(a, b), "x7 from (1,0), t = 0.1"};
}

Outcome fixed_energy_fields(std::uint64_t seed) {
  double worst = 0.0;
  for (double E : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0}) {
    auto gens = fixed_energy_algebra(E);
    int sheet = fixed_energy_sheet(E);
    double s = E < 0 ? 1.0 : -1.0;
    Rng g = stream_rng(seed, "fixed_energy_fields", static_cast<std::uint64_t>(std::lround(E * 4 + 16)));
    for (int k = 0; k < 50; ++k) {
      PlanePoint p = random_point(g);
      double x = p.x, y = p.y, r = p.r();
      PlanePoint ref[3] = {{-y, x},
                           {s * (r + E * x * x), s * E * x * y},
                           {s * E * x * y, s * (r + E * y * y)}};
      for (int i = 0; i < 3; ++i) {
        PlaneVector v = vf_plane(gens[static_cast<std::size_t>(i)], p, sheet);
        double err = std::hypot(v.vx - ref[i].x, v.vy - ref[i].y) /
                     std::max(1.0, std::hypot(ref[i].x, ref[i].y));
        worst = std::max(worst, err);
      }
    }
  }
  return {worst, ""};
}

Outcome fixed_energy_quadric(std::uint64_t seed) {
  double worst = 0.0;
  for (double E : {-1.0, -0.5, 0.5, 2.0}) {
    auto gens = fixed_energy_algebra(E);
    Rng g = stream_rng(seed, "fixed_energy_quadric", static_cast<std::uint64_t>(std::lround(E * 4 + 16)));
    for (int k = 0; k < 5; ++k) {
      // Orbit of energy E: a^2 + b^2 = c^2 + 2Ec; E > 0 uses the c < 0 representative.
      double c = E < 0 ? uniform(g, 1.1, 3.0) * (-E) : uniform(g, 0.3, 2.0);
      double s = std::sqrt(c * c + 2.0 * E * c), phi = uniform(g, -kPi, kPi);
      MinkVec v{s * std::cos(phi), s * std::sin(phi), E < 0 ? c : -c};
      auto quadric = [&](const MinkVec& w) {
        double d = w.c - std::abs(E);
        return w.a * w.a + w.b * w.b - d * d + E * E;
      };
      for (const auto& X : gens) {
        for (double t : {0.25, 0.5}) {
          MinkVec w = flow_dual(X, v, t);
          worst = std::max(worst, std::abs(quadric(w)) / std::max(1.0, norm(w) * norm(w)));
        }
      }
    }
  }
  return {worst, ""};
}

// ------------------------------------------------------------ duality

Outcome lorentz_norm_invariance(std::uint64_t seed) {
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    Rng g = stream_rng(seed, "lorentz_norm", static_cast<std::uint64_t>(k));
    AlgebraElement X = algebra(0, uniform(g, -1, 1), uniform(g, -1, 1), uniform(g, -1, 1), 0, 0, 0);
    Mat3 A = exp(X).A();
    Vec3 v(uniform(g, -2, 2), uniform(g, -2, 2), uniform(g, -2, 2));
    Vec3 w = A * v;
    MinkVec mv{v(0), v(1), v(2)}, mw{w(0), w(1), w(2)};
    double scale = std::max(1e-300, v.squaredNorm());
    worst = std::max(worst, std::abs(norm2(mw) - norm2(mv)) / std::max(scale, std::abs(norm2(mv))));
  }
  return {worst, ""};
}

Outcome point_plane_parabolic(std::uint64_t seed) {
  int bad = 0;
  Rng g = stream_rng(seed, "point_plane", 0);
  for (int k = 0; k < 100; ++k) {
    PlanePoint p = random_point(g, 0.01, 100.0);
    if (classify_plane(point_plane(p.x, p.y)) != PlaneType::kParabolic) ++bad;
  }
  return {static_cast<double>(bad), std::to_string(bad) + " of 100 misclassified"};
}

Outcome pencil_intersections(std::uint64_t seed) {
  int bad = 0, counts[3] = {0, 0, 0};
  for (int k = 0; k < 100; ++k) {
    Rng g = stream_rng(seed, "pencil", static_cast<std::uint64_t>(k));
    KeplerOrbit o1 = random_ellipse(g), o2 = random_ellipse(g);
    int predicted = pencil_classify(o1.dual(), o2.dual()).predicted_common_points;
    int found = oracle::intersection_count(o1, o2);
    if (predicted != found) ++bad;
    ++counts[std::clamp(predicted, 0, 2)];
  }
  return {static_cast<double>(bad), "pairs with 0/1/2 common points: " + std::to_string(counts[0]) +
                                        "/" + std::to_string(counts[1]) + "/" +
                                        std::to_string(counts[2])};
}

// Tangent line at the point of direction theta is (a + c cos, b + c sin).
Outcome dual_curve_vs_circle(std::uint64_t seed) {
  double worst = 0.0;
  for (int k = 0; k < 30; ++k) {
    Rng g = stream_rng(seed, "dual_curve", static_cast<std::uint64_t>(k));
    KeplerOrbit o = random_orbit(g, k);
    ParametricCurve d = dual_curve(orbit_curve(o));
    Circle circ = dual_of_orbit(o);
    for (double t : sample_angles(o, 50)) {
      PlanePoint p = d.point(t);
      PlanePoint ref{o.a() + o.c() * std::cos(t), o.b() + o.c() * std::sin(t)};
      worst = std::max(worst, dist(p, ref));
      worst = std::max(worst, std::abs(std::hypot(p.x - circ.cx, p.y - circ.cy) - circ.radius));
    }
  }
  return {worst, ""};
}

Outcome double_duality(std::uint64_t) {
  double worst = 0.0;
  ParametricCurve c = ellipse_curve(0.3, -0.2, 1.5, 1.0);
  ParametricCurve dd = dual_curve(dual_curve(c));
  for (int i = 0; i < 100; ++i) {
    double t = 2.0 * kPi * i / 100;
    worst = std::max(worst, dist(dd.point(t), c.point(t)));
  }
  return {worst, ""};
}

Outcome conserved_vs_newton(std::uint64_t seed) {
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    Rng g = stream_rng(seed, "conserved_newton", static_cast<std::uint64_t>(k));
    KeplerOrbit o = random_orbit(g, k);
    Conserved q = conserved(o);
    FlowPlan plan = default_flow_plan(o);
    auto traj = newton_flow(o, std::min(plan.steps, 2000), plan.dt);
    const PhaseState& s = traj.back();
    worst = std::max(worst, std::abs(energy(s) - q.E) / std::max(1.0, std::abs(q.E)));
    worst = std::max(worst, std::abs(std::abs(angular_momentum(s)) - q.M) / q.M);
  }
  return {worst, ""};
}

Outcome fit_recovery(std::uint64_t seed) {
  double worst = 0.0;
  for (int k = 0; k < 30; ++k) {
    Rng g = stream_rng(seed, "fit", static_cast<std::uint64_t>(k));
    KeplerOrbit o = random_orbit(g, k);
    for (int n : {3, 7, 30}) {
      auto pts = sample(o, n);
      ConicFit f = fit(pts);
      worst = std::max(worst, dist(f.dual, o.dual()) / norm(o.dual()));
    }
  }
  return {worst, ""};
}

struct NewtonStats {
  double membership = 0.0;
  double drift = 0.0;
};

// Orbit equation and conservation along integrated trajectories, for the
// three worked classes and a few random orbits.
NewtonStats newton_stats(std::uint64_t seed) {
  std::vector<KeplerOrbit> orbits = {KeplerOrbit::from_abc(0.5, 0, 1), KeplerOrbit::from_abc(1, 0, 1),
                                     KeplerOrbit::from_abc(2, 0, 1)};
  for (int k = 0; k < 6; ++k) {
    Rng g = stream_rng(seed, "newton_membership", static_cast<std::uint64_t>(k));
    orbits.push_back(random_orbit(g, k));
  }
  NewtonStats st;
  for (const auto& o : orbits) {
    Conserved q = conserved(o);
    FlowPlan plan = default_flow_plan(o);
    for (const PhaseState& s : newton_flow(o, plan.steps, plan.dt)) {
      double r = std::hypot(s.x, s.y);
      st.membership = std::max(st.membership, std::abs(o.a() * s.x + o.b() * s.y + o.c() * r - 1.0));
      st.drift = std::max(st.drift, std::abs(energy(s) - q.E));
      st.drift = std::max(st.drift, std::abs(std::abs(angular_momentum(s)) - q.M));
    }
  }
  return st;
}

Outcome newton_membership(std::uint64_t seed) { return {newton_stats(seed).membership, ""}; }
Outcome newton_conservation(std::uint64_t seed) { return {newton_stats(seed).drift, "max E and M drift"}; }

// ------------------------------------------------------------ maps

struct SquareStats {
  double fit = 0.0;
  double ecc = 0.0;
};

SquareStats square_stats(std::uint64_t seed) {
  SquareStats st;
  for (int k = 0; k < 50; ++k) {
    Rng g = stream_rng(seed, "square_lines", static_cast<std::uint64_t>(k));
    double d = uniform(g, 0.3, 3.0), phi = uniform(g, -kPi, kPi);
    PlanePoint n{std::cos(phi), std::sin(phi)};
    std::vector<PlanePoint> img;
    for (int i = 0; i < 20; ++i) {
      double t = -2.0 + 4.0 * i / 19.0;
      img.push_back(square({d * n.x - t * n.y, d * n.y + t * n.x}));
    }
    ConicFit f = fit(img);
    st.fit = std::max(st.fit, f.residual);
    st.ecc = std::max(st.ecc, std::abs(conserved(f.orbit()).e - 1.0));
    MinkVec pred = KeplerOrbit::from_dual(square_line_dual({n.x / d, n.y / d, 0.0})).dual();
    st.fit = std::max(st.fit, dist(f.orbit().dual(), pred) / norm(pred));
  }
  return st;
}

Outcome square_lines_fit(std::uint64_t seed) { return {square_stats(seed).fit, "fit residual and dual gap"}; }
Outcome square_lines_eccentricity(std::uint64_t seed) { return {square_stats(seed).ecc, "max |e - 1|"}; }

Outcome flatten_case(std::uint64_t seed, bool dual) {
  double worst = 0.0;
  for (double M : {0.5, 1.0, 2.0}) {
    for (int k = 0; k < 10; ++k) {
      Rng g = stream_rng(seed, "flatten", static_cast<std::uint64_t>(k * 10 + std::lround(M * 2)));
      double c = 1.0 / (M * M), e = uniform(g, 0.05, 2.5), phi = uniform(g, -kPi, kPi);
      KeplerOrbit o = KeplerOrbit::from_abc(c * e * std::cos(phi), c * e * std::sin(phi), c);
      std::vector<PlanePoint> img;
      for (const PlanePoint& p : sample(o, 40)) {
        if (std::abs(1.0 - p.r() / (M * M)) < 1e-3) continue;
        img.push_back(flatten_M(p, M));
      }
      ConicFit f = fit(img);
      if (!f.is_line) return {1.0, "image not a line at M = " + fmt(M)};
      worst = std::max(worst, dual ? dist(f.dual, flatten_M_dual(o.dual(), M)) : f.residual);
    }
  }
  return {worst, ""};
}

Outcome hill_image(std::uint64_t seed) {
  double worst = 0.0, rmax = 0.0;
  const double E = 1.0;
  for (int k = 0; k < 50; ++k) {
    Rng g = stream_rng(seed, "hill", static_cast<std::uint64_t>(k));
    double c = uniform(g, 0.2, 2.0), phi = uniform(g, -kPi, kPi);
    double s = std::sqrt(c * c + 2.0 * E * c);
    KeplerOrbit o = KeplerOrbit::from_abc(s * std::cos(phi), s * std::sin(phi), c);
    std::vector<PlanePoint> img;
    for (const PlanePoint& p : sample(o, 30)) {
      PlanePoint q = hill_embed(p, E);
      rmax = std::max(rmax, q.r());
      img.push_back(q);
    }
    ConicFit f = fit(img);
    if (f.repelling) return {1.0, "image on a repelling branch"};
    MinkVec pred = hill_dual(o.dual(), E);
    MinkVec refl = hill_dual_reflection({o.a(), o.b(), -o.c()}, E);
    worst = std::max(worst, dist(f.dual, pred) / norm(pred));
    worst = std::max(worst, dist(pred, refl));
    worst = std::max(worst, std::abs(conserved(f.orbit()).E + E));
  }
  if (!(rmax < 0.5)) return {1.0, "image radius " + fmt(rmax) + " >= 1/2"};
  return {worst, "max image radius " + fmt(rmax)};
}

Outcome repel_image(std::uint64_t seed) {
  double rmin = 1.0, rmax = 0.0, worst = 0.0;
  const double E = 1.0;
  for (int k = 0; k < 20; ++k) {
    Rng g = stream_rng(seed, "repel", static_cast<std::uint64_t>(k));
    double c = uniform(g, 0.2, 2.0), phi = uniform(g, -kPi, kPi);
    double s = std::sqrt(c * c + 2.0 * E * c);
    KeplerOrbit o = KeplerOrbit::from_abc(s * std::cos(phi), s * std::sin(phi), c);
    std::vector<PlanePoint> img;
    for (const PlanePoint& p : sample_repelling(o, 30)) {
      PlanePoint q = repel_embed(p, E);
      rmin = std::min(rmin, q.r());
      rmax = std::max(rmax, q.r());
      img.push_back(q);
    }
    // Both branches land on the same image ellipse.
    MinkVec pred = hill_dual(o.dual(), E);
    for (const PlanePoint& q : img) worst = std::max(worst, oracle::conic_residual(pred, q));
  }
  if (!(rmin > 0.5 && rmax < 1.0)) return {1.0, "radii outside (1/2, 1)"};
  return {worst, "radii in [" + fmt(rmin) + ", " + fmt(rmax) + "]"};
}

Outcome parabola_chart_law(std::uint64_t seed) {
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    Rng g = stream_rng(seed, "parabola_chart", static_cast<std::uint64_t>(k));
    double A = uniform(g, -2, 2), B = uniform(g, -2, 2), C = uniform(g, -2, 2);
    MinkVec v = parabola_chart_dual(A, B, C);
    for (int i = 0; i < 20; ++i) {
      double X = uniform(g, -3, 3), Y = A * X * X + B * X + C;
      if (std::abs(Y) < 0.05) continue;
      PlanePoint p = parabola_chart(X, Y);
      // Y < 0 lands on the branch ax + by - cr = 1.
      double sheet = Y > 0 ? 1.0 : -1.0;
      double res = std::abs(v.a * p.x + v.b * p.y + sheet * v.c * p.r() - 1.0);
      worst = std::max(worst, res / std::max(1.0, p.r()));
    }
  }
  return {worst, ""};
}

Outcome square_hooke_minor_axis(std::uint64_t) {
  std::vector<PlanePoint> img;
  for (int i = 0; i < 40; ++i) {
    double t = 2.0 * kPi * i / 40;
    img.push_back(square({2.0 * std::cos(t), std::sin(t)}));
  }
  ConicFit f = fit(img);
  OrbitGeometry geo = geometry(f.orbit());
  return {std::abs(2.0 * *geo.semi_minor - 4.0) + f.residual, "minor axis " + fmt(2.0 * *geo.semi_minor)};
}

// ------------------------------------------------------------ invariants

Outcome fixed_e_gate(std::uint64_t seed) {
  Expr r = Expr::var("r"), y = Expr::var("y"), p = Expr::var("p");
  double worst = 0.0;
  for (double E : {-1.0, 0.5, 2.0}) {
    Box box = default_box2();
    if (E < 0) box["y"] = {-E + 0.1, 3.0};
    SecondOrderODE ode = fixed_E_ode(Expr(-1) / (r * r), Expr(-1) / r, E, box);
    Expr e = Expr::constant(number_from_double(E));
    Expr closed = (y * y + p * p) / (Expr(2) * (y + e)) - y;
    ZeroTestOptions opt;
    opt.seed = seed;
    worst = std::max(worst, zero_test(ode.f - closed, box, opt).max_scaled_residual);
  }
  return {worst, ""};
}

Outcome fixed_e_kepler_i2(std::uint64_t seed) {
  Expr r = Expr::var("r");
  double worst = 0.0, i1 = 0.0;
  for (double E : {-1.0, 0.5, 2.0}) {
    Box box = default_box2();
    box["y"] = {E < 0 ? -E + 0.1 : 0.5, 3.0};
    SecondOrderODE ode = fixed_E_ode(Expr(-1) / (r * r), Expr(-1) / r, E, box);
    Expr i2 = I2(ode);
    ZeroTestOptions opt;
    opt.seed = seed;
    i1 = std::max(i1, zero_test(I1(ode), box, opt).max_scaled_residual);
    for (int k = 0; k < 16; ++k) {
      Bindings b = zero_test_sample(box, seed, k);
      double rho = b.at("y");
      double ref = 9.0 * E * E / std::pow(E + rho, 3);
      worst = std::max(worst, std::abs(eval(i2, b) - ref) / std::abs(ref));
    }
  }
  if (i1 > 1e-9) return {1.0, "I1 does not vanish: " + fmt(i1)};
  return {worst, "relative error of I2 against 9E^2/(E+rho)^3"};
}

Outcome fixed_m_kepler_flat(std::uint64_t seed) {
  Expr r = Expr::var("r");
  double worst = 0.0;
  for (double M : {0.5, 1.0, 2.0}) {
    SecondOrderODE ode = fixed_M_ode(Expr(-1) / (r * r), M);
    ZeroTestOptions opt;
    opt.seed = seed;
    Flatness f = flatness(ode, opt);
    worst = std::max({worst, f.i1.max_scaled_residual, f.i2.max_scaled_residual});
    // The linear equation rho'' = 1/M^2 - rho written directly.
    Expr direct = Expr::constant(number_from_double(1.0 / (M * M))) - Expr::var("y");
    Flatness fd = flatness({direct, default_box2()}, opt);
    worst = std::max({worst, fd.i1.max_scaled_residual, fd.i2.max_scaled_residual});
  }
  return {worst, ""};
}

Outcome zero_e_kepler_flat(std::uint64_t seed) {
  Expr r = Expr::var("r");
  SecondOrderODE ode = fixed_E_ode(Expr(-1) / (r * r), Expr(-1) / r, 0.0);
  ZeroTestOptions opt;
  opt.seed = seed;
  Flatness f = flatness(ode, opt);
  return {std::max(f.i1.max_scaled_residual, f.i2.max_scaled_residual), ""};
}

// Residual: number of alphas whose verdict differs from the expected set.
Outcome scan_case(std::uint64_t seed, ScanKind kind, const std::vector<double>& alphas,
                  const std::vector<double>& expected_pass, Exec exec) {
  ZeroTestOptions opt;
  opt.seed = seed;
  auto rows = power_law_scan_batch(alphas, kind, opt, exec);
  int wrong = 0;
  std::string passed;
  for (const ScanRow& row : rows) {
    bool want = std::find(expected_pass.begin(), expected_pass.end(), row.alpha) != expected_pass.end();
    if (row.pass != want) ++wrong;
    if (row.pass) passed += (passed.empty() ? "" : ",") + fmt(row.alpha);
  }
  return {static_cast<double>(wrong), "passing alphas {" + passed + "}"};
}

const std::vector<double> kScanGrid = {-3, -2.5, -2, -1.5, -1, -0.5, 0, 0.5, 1, 1.5, 2, 3};

Outcome wunschmann_scale(std::uint64_t seed) {
  Expr rho = Expr::var("rho");
  double worst = 0.0;
  for (double c : {0.5, 1.0, 3.0}) {
    Expr k = Expr::constant(number_from_double(c));
    for (const Expr& f : {k * rho * rho, k / rho}) {
      ThirdOrderODE ode = central_3rd_order(f);
      ZeroTestOptions opt;
      opt.seed = seed;
      worst = std::max(worst, zero_test(wunschmann_residual(ode), ode.box, opt).max_scaled_residual);
    }
  }
  return {worst, ""};
}

Outcome type2_witness(std::uint64_t seed) {
  SecondOrderODE ode{parse("(x*p - y)^3"), default_box2()};
  ZeroTestOptions opt;
  opt.seed = seed;
  Flatness f = flatness(ode, opt);
  if (f.i2.zero) return {1.0, "I2 vanished"};
  return {f.i1.max_scaled_residual, "I2 scaled residual " + fmt(f.i2.max_scaled_residual)};
}

Outcome expr_diff_fd(std::uint64_t seed) {
  const char* texts[] = {"(rho^2 + p^2)/(2*(rho+E))", "sin(rho)*p^3 - ln(rho)/E",
                         "sqrt(rho + p^2)*cos(E*rho)", "rho^(-3/2) + p/(1 + rho^2)"};
  Box box = {{"rho", {0.5, 2.0}}, {"p", {-1.0, 1.0}}, {"E", {0.5, 2.0}}};
  double worst = 0.0;
  for (const char* t : texts) {
    Expr e = parse(t);
    for (const char* v : {"rho", "p", "E"}) {
      Expr d = diff(e, v);
      for (int k = 0; k < 100; ++k) {
        Bindings b = zero_test_sample(box, seed + 17, k);
        auto f = [&](double x) {
          Bindings bb = b;
          bb[v] = x;
          return eval(e, bb);
        };
        double h = 1e-3 * std::max(1.0, std::abs(b[v]));
        double ref = oracle::fd1(f, b[v], h);
        worst = std::max(worst, std::abs(eval(d, b) - ref) / std::max(1.0, std::abs(ref)));
      }
    }
  }
  return {worst, ""};
}

// ------------------------------------------------------------ theorems

Outcome offset_circle_vertices(std::uint64_t) {
  ParametricCurve c = circle_curve(0.6, 0.0, 1.0);
  std::vector<double> v = kepler_vertices(c);
  if (v.size() != 4) return {1.0, std::to_string(v.size()) + " vertices"};
  const PlanePoint axes[4] = {{1.6, 0.0}, {0.0, 0.8}, {-0.4, 0.0}, {0.0, -0.8}};
  double worst = 0.0;
  for (const PlanePoint& target : axes) {
    double best = 1e300;
    for (double t : v) best = std::min(best, dist(c.point(t), target));
    worst = std::max(worst, best);
  }
  // Cross-check against the polar-derivative oracle.
  std::vector<double> angles = oracle::circle_kepler_vertex_angles(0.6, 1.0);
  for (double a : angles) {
    double best = 1e300;
    for (double t : v) {
      double d = std::remainder(c.point(t).theta() - a, 2.0 * kPi);
      best = std::min(best, std::abs(d));
    }
    worst = std::max(worst, best);
  }
  return {worst, "4 vertices"};
}

Outcome offset_circle_tait_kneser(std::uint64_t) {
  ParametricCurve c = circle_curve(0.6, 0.0, 1.0);
  std::vector<double> v = kepler_vertices(c);
  if (v.size() != 4) return {1.0, std::to_string(v.size()) + " vertices"};
  int bad = 0, uncertified = 0, pairs = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double ta = v[i], tb = i + 1 < v.size() ? v[i + 1] : v[0] + 2.0 * kPi;
    TaitKneserReport rep = tait_kneser(c, ta, tb, 12);
    pairs += rep.pairs;
    bad += (rep.pairs - rep.nested_pairs) + (rep.pairs - rep.timelike_chords);
    uncertified += rep.uncertified_pairs;
  }
  return {static_cast<double>(bad), std::to_string(pairs) + " pairs over 4 arcs, " +
                                        std::to_string(uncertified) + " involve a hyperbola"};
}

Outcome vertex_in_arc_rejected(std::uint64_t) {
  ParametricCurve c = circle_curve(0.6, 0.0, 1.0);
  std::vector<double> v = kepler_vertices(c);
  try {
    tait_kneser(c, v[0] - 0.1, v[0] + 0.1);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kVertexInArc) return {0.0, ""};
    throw;
  }
  return {1.0, "no error for an arc around a vertex"};
}

Outcome four_vertex_random(std::uint64_t seed) {
  int worst_deficit = 0, tried = 0, min_count = 1 << 30;
  for (int k = 0; k < 12; ++k) {
    Rng g = stream_rng(seed, "four_vertex", static_cast<std::uint64_t>(k));
    SupportFunction s{1.0, {}, {}};
    for (int m = 1; m <= 4; ++m) {
      double amp = m == 1 ? 0.4 : 0.12 / m;
      s.cos_coeffs.push_back(uniform(g, -amp, amp));
      s.sin_coeffs.push_back(uniform(g, -amp, amp));
    }
    bool ok = true;
    for (int i = 0; i < 720 && ok; ++i) {
      double phi = 2.0 * kPi * i / 720;
      ok = s.h(phi) > 0.05 && s.h_plus_h2(phi) > 0.05;
    }
    if (!ok) continue;
    ++tried;
    int n = static_cast<int>(kepler_vertices(support_curve(s)).size());
    min_count = std::min(min_count, n);
    worst_deficit = std::max(worst_deficit, 4 - n);
  }
  if (tried == 0) return {1.0, "no admissible curve generated"};
  return {static_cast<double>(std::max(worst_deficit, 0)),
          std::to_string(tried) + " curves, fewest vertices " + std::to_string(min_count)};
}

Outcome osculating_case(bool three_point) {
  // Circle about (0.6, 0) in polar form; contact order from shrinking offsets.
  const double d = 0.6, R = 1.0, th0 = 0.7;
  auto rho_curve = [&](double th) {
    double s = std::sin(th);
    return 1.0 / (d * std::cos(th) + std::sqrt(R * R - d * d * s * s));
  };
  ParametricCurve c = ParametricCurve::from_jets(
      [=](const Jet& t) {
        Jet s = sin(t), co = cos(t);
        Jet r = d * co + sqrt(R * R - d * d * s * s);
        return JetPoint{r * co, r * s};
      },
      0.0, 2.0 * kPi, true);
  KeplerOrbit o = osculating_orbit(polar_jet(c, th0));
  auto gap = [&](double h) { return std::abs(o.rho(th0 + h) - rho_curve(th0 + h)); };
  double order = std::log2(gap(0.02) / gap(0.01));
  // Independent route: orbit through three nearby points.
  MinkVec three = oracle::orbit_through_three(c, th0, 1e-3);
  double agree = dist(three, o.dual());
  if (three_point) return {agree, "three-point orbit at spacing 1e-3"};
  return {std::abs(order - 3.0), "contact order " + fmt(order)};
}

Outcome osculating_example(std::uint64_t) {
  KeplerOrbit o = osculating_orbit({0.0, 1.0, 0.2, -0.3});
  return {dist(o.dual(), MinkVec{0.3, 0.2, 0.7}), ""};
}

Outcome lambert_random(std::uint64_t seed) {
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    Rng g = stream_rng(seed, "lambert", static_cast<std::uint64_t>(k));
    KeplerOrbit o = random_ellipse(g, 0.95);
    double u1 = uniform(g, -kPi, kPi), u2 = uniform(g, -kPi, kPi);
    LambertSides s = lambert_check(o, u1, u2);
    double B = 2.0 * *geometry(o).semi_minor;
    worst = std::max(worst, std::abs(s.lhs - s.rhs) / (1.0 + B * B));
  }
  return {worst, ""};
}

Outcome lambert_exact_case(std::uint64_t) {
  ExactLambertSides s = lambert_check_exact(Rational(1, 2), Rational(0), Rational(1), Rational(1),
                                            Rational(0), Rational(-1), Rational(0));
  bool ok = s.lhs == s.rhs && s.lhs == Rational(16, 3);
  return {ok ? 0.0 : 1.0, s.lhs.to_string() + " = " + s.rhs.to_string()};
}

// Both sides stay fixed along Lorentz flows, which preserve the minor axis.
Outcome lambert_lorentz(std::uint64_t seed) {
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    Rng g = stream_rng(seed, "lambert_lorentz", static_cast<std::uint64_t>(k));
    KeplerOrbit o = random_ellipse(g, 0.7);
    double u1 = uniform(g, -kPi, kPi), u2 = uniform(g, -kPi, kPi);
    PlanePoint p1 = eccentric_point(o, u1), p2 = eccentric_point(o, u2);
    LambertSides base = lambert_check(o, u1, u2);
    int gen = 2 + k % 3;
    for (double t : {0.05, 0.1, 0.2}) {
      GroupElement el = exp(AlgebraElement::basis(gen), t);
      KeplerOrbit o2 = KeplerOrbit::from_dual(act_dual(el, o.dual()));
      PlanePoint q1 = act_plane(el, p1, 1), q2 = act_plane(el, p2, 1);
      LambertSides s = lambert_check(o2, eccentric_anomaly(o2, q1), eccentric_anomaly(o2, q2));
      double dr = q1.r() - q2.r();
      double rhs_direct = (q1.x - q2.x) * (q1.x - q2.x) + (q1.y - q2.y) * (q1.y - q2.y) - dr * dr;
      double scale = 1.0 + std::abs(base.lhs);
      worst = std::max({worst, std::abs(s.lhs - base.lhs) / scale, std::abs(s.rhs - base.rhs) / scale,
                        std::abs(rhs_direct - base.rhs) / scale});
    }
  }
  return {worst, ""};
}

using PointFn = std::function<PlanePoint(double)>;

struct TangencyCheck {
  double residual = 0.0;
  int crossings = 0;
};

void tangency_both(TangencyCheck& acc, const PointFn& member, double t0, double t1,
                   const ImplicitFn& F, const Contact& c) {
  oracle::TangencyOracle o = oracle::tangency(member, t0, t1, F);
  acc.residual = std::max({acc.residual, o.residual, c.residual});
  acc.crossings += (o.crossing ? 1 : 0) + (c.crossing ? 1 : 0);
}

ImplicitFn orbit_function(const KeplerOrbit& env) {
  return [env](const PlanePoint& p) { return env.a() * p.x + env.b() * p.y + env.c() * p.r() - 1.0; };
}

Outcome outcome_of(const TangencyCheck& acc, int members) {
  if (acc.crossings > 0) return {1.0, std::to_string(acc.crossings) + " crossings"};
  return {acc.residual, std::to_string(members) + " members"};
}

PointFn orbit_points(const KeplerOrbit& o) {
  return [o](double th) { return PlanePoint::polar(1.0 / o.rho(th), th); };
}

Outcome envelope_minor_axis_case(std::uint64_t) {
  TangencyCheck acc;
  KeplerOrbit env = envelope_minor_axis(2.0, 1.0);
  auto fam = minor_axis_family(2.0, 1.0, 20);
  for (const KeplerOrbit& m : fam) {
    tangency_both(acc, orbit_points(m), 0.0, 2.0 * kPi, orbit_function(env), contact(m, env));
  }
  return outcome_of(acc, static_cast<int>(fam.size()));
}

Outcome envelope_energy_case(std::uint64_t) {
  TangencyCheck acc;
  const double E = -0.5, x0 = 1.0;
  KeplerOrbit env = envelope_energy(E, x0);
  auto fam = energy_family(E, x0, 20);
  for (const KeplerOrbit& m : fam) {
    tangency_both(acc, orbit_points(m), 0.0, 2.0 * kPi, orbit_function(env), contact(m, env));
  }
  PlanePoint f = second_focus(env);
  double focus = dist(f, {x0, 0.0});
  if (focus > 1e-9) return {1.0, "second focus off by " + fmt(focus)};
  Outcome o = outcome_of(acc, static_cast<int>(fam.size()));
  o.detail += ", focus error " + fmt(focus);
  return o;
}

Outcome envelope_hooke_case(std::uint64_t seed) {
  TangencyCheck acc;
  const double Delta = kPi;
  HookeEnvelope env = envelope_hooke(Delta);
  if (std::abs(env.offset - 1.0) > 1e-15) return {1.0, "offset " + fmt(env.offset)};
  Rng g = stream_rng(seed, "hooke", 0);
  for (int k = 0; k < 20; ++k) {
    double shear = uniform(g, -2.0, 2.0);
    ParametricCurve m = hooke_member(Delta, shear);
    for (int sign : {1, -1}) {
      ImplicitFn F = [env, sign](const PlanePoint& p) {
        return sign * (env.normal.x * p.x + env.normal.y * p.y) / env.offset - 1.0;
      };
      tangency_both(acc, [m](double t) { return m.point(t); }, m.t0(), m.t1(), F, contact(m, env, sign));
    }
  }
  return outcome_of(acc, 20);
}

// The squared Hooke lines envelope the squared (Kepler) family.
Outcome envelope_hooke_squared(std::uint64_t seed) {
  TangencyCheck acc;
  const double Delta = kPi;
  HookeEnvelope env = envelope_hooke(Delta);
  Rng g = stream_rng(seed, "hooke_squared", 0);
  for (int k = 0; k < 20; ++k) {
    ParametricCurve m = hooke_member(Delta, uniform(g, -2.0, 2.0));
    for (int sign : {1, -1}) {
      MinkVec line{sign * env.normal.x / env.offset, sign * env.normal.y / env.offset, 0.0};
      KeplerOrbit par = KeplerOrbit::from_dual(square_line_dual(line));
      PointFn sq = [m](double t) { return square(m.point(t)); };
      ImplicitFn F = orbit_function(par);
      oracle::TangencyOracle o = oracle::tangency(sq, m.t0(), m.t1(), F);
      acc.residual = std::max(acc.residual, o.residual);
      acc.crossings += o.crossing ? 1 : 0;
    }
  }
  return outcome_of(acc, 20);
}

Outcome curved_quadric_cases(std::uint64_t) {
  double worst = std::abs(curved_energy(-0.5, 1.0, 1.0)) + std::abs(curved_energy(1.0, 2.0, -1.0) + 1.0) +
                 std::abs(curved_energy(0.3, 2.0, 0.0) - 0.3);
  worst = std::max(worst, curved_quadric_check({0, 0, 1}, -0.5, 0.0));
  worst = std::max(worst, curved_quadric_check({std::sqrt(3.0), 0, -1}, 1.0, 0.0));
  // Minor axis B family: a^2 + b^2 - c^2 = -4/B^2 is the E_k = 0 quadric with k = 4/B^2.
  for (double B : {1.0, 2.0, 3.5}) {
    KeplerOrbit m = minor_axis_family(B, 1.0, 5)[2];
    worst = std::max(worst, curved_quadric_check(m.dual(), 0.0, 4.0 / (B * B)));
  }
  return {worst, ""};
}

// ------------------------------------------------------------ registry

struct Registry {
  std::vector<std::pair<std::string, Case>> cases;  // suite, case
};

const Registry& registry() {
  static const Registry reg = [] {
    Registry r;
    auto add = [&](const char* suite, const char* name, double tol, std::function<Outcome(std::uint64_t)> fn) {
      r.cases.push_back({suite, Case{std::string(suite) + "." + name, tol, std::move(fn)}});
    };
    add("symmetry", "vf_plane_closed_form", 1e-12, vf_plane_closed_form);
    add("symmetry", "vf_dual_closed_form", 1e-12, vf_dual_closed_form);
    add("symmetry", "commuting_square", 1e-8, commuting_square);
    add("symmetry", "bracket_closure", 1e-6, bracket_closure);
    add("symmetry", "one_parameter_subgroup", 1e-11, one_parameter_subgroup);
    add("symmetry", "flow_vs_exp", 1e-8, flow_vs_exp);
    add("symmetry", "fixed_energy_fields", 1e-12, fixed_energy_fields);
    add("symmetry", "fixed_energy_quadric", 1e-9, fixed_energy_quadric);

    add("duality", "lorentz_norm_invariance", 1e-12, lorentz_norm_invariance);
    add("duality", "point_plane_parabolic", 0.0, point_plane_parabolic);
    add("duality", "pencil_intersections", 0.0, pencil_intersections);
    add("duality", "dual_curve_vs_circle", 1e-8, dual_curve_vs_circle);
    add("duality", "double_duality", 1e-8, double_duality);
    add("duality", "conserved_vs_newton", 1e-6, conserved_vs_newton);
    add("duality", "fit_recovery", 1e-9, fit_recovery);
    add("duality", "newton_membership", 1e-6, newton_membership);
    add("duality", "newton_conservation", 1e-8, newton_conservation);

    add("maps", "square_lines_fit", 1e-9, square_lines_fit);
    add("maps", "square_lines_eccentricity", 1e-6, square_lines_eccentricity);
    add("maps", "flatten_collinear", 1e-10, [](std::uint64_t s) { return flatten_case(s, false); });
    add("maps", "flatten_dual_prediction", 1e-9, [](std::uint64_t s) { return flatten_case(s, true); });
    add("maps", "hill_image", 1e-8, hill_image);
    add("maps", "repel_image", 1e-8, repel_image);
    add("maps", "parabola_chart_law", 1e-10, parabola_chart_law);
    add("maps", "square_hooke_minor_axis", 1e-9, square_hooke_minor_axis);

    add("invariants", "fixed_e_gate", 1e-9, fixed_e_gate);
    add("invariants", "fixed_e_kepler_i2", 1e-10, fixed_e_kepler_i2);
    add("invariants", "fixed_m_kepler_flat", 1e-9, fixed_m_kepler_flat);
    add("invariants", "zero_e_kepler_flat", 1e-9, zero_e_kepler_flat);
    add("invariants", "wunschmann_scan", 0.0, [](std::uint64_t s) {
      return scan_case(s, ScanKind::kWunschmann, kScanGrid, {-2, 1}, Exec::kSerial);
    });
    add("invariants", "fixed_m_scan", 0.0, [](std::uint64_t s) {
      return scan_case(s, ScanKind::kFixedMFlat, kScanGrid, {-3, -2}, Exec::kSerial);
    });
    add("invariants", "zero_e_scan", 0.0, [](std::uint64_t s) {
      std::vector<double> pass;
      for (double a : kScanGrid) if (a != -1.0) pass.push_back(a);
      return scan_case(s, ScanKind::kZeroEFlat, kScanGrid, pass, Exec::kSerial);
    });
    add("invariants", "fixed_e_scan", 0.0, [](std::uint64_t s) {
      return scan_case(s, ScanKind::kFixedEFlat, kScanGrid, {}, Exec::kSerial);
    });
    add("invariants", "wunschmann_scale", 1e-9, wunschmann_scale);
    add("invariants", "type2_witness", 1e-9, type2_witness);
    add("invariants", "expr_diff_fd", 1e-6, expr_diff_fd);

    add("theorems", "offset_circle_vertices", 1e-6, offset_circle_vertices);
    add("theorems", "offset_circle_tait_kneser", 0.0, offset_circle_tait_kneser);
    add("theorems", "vertex_in_arc_rejected", 0.0, vertex_in_arc_rejected);
    add("theorems", "four_vertex_random", 0.0, four_vertex_random);
    add("theorems", "osculating_order", 0.05, [](std::uint64_t) { return osculating_case(false); });
    add("theorems", "osculating_three_point", 1e-4, [](std::uint64_t) { return osculating_case(true); });
    add("theorems", "osculating_example", 1e-12, osculating_example);
    add("theorems", "lambert_random", 1e-10, lambert_random);
    add("theorems", "lambert_exact", 0.0, lambert_exact_case);
    add("theorems", "lambert_lorentz", 1e-8, lambert_lorentz);
    add("theorems", "envelope_minor_axis", 1e-7, envelope_minor_axis_case);
    add("theorems", "envelope_energy", 1e-7, envelope_energy_case);
    add("theorems", "envelope_hooke", 1e-7, envelope_hooke_case);
    add("theorems", "envelope_hooke_squared", 1e-7, envelope_hooke_squared);
    add("theorems", "curved_quadric", 1e-12, curved_quadric_cases);
    return r;
  }();
  return reg;
}

bool suite_known(std::string_view suite) {
  if (suite == "all") return true;
  const auto& names = suite_names();
  return std::find(names.begin(), names.end(), suite) != names.end();
}

}  // namespace

std::string_view to_string(CaseStatus s) {
  switch (s) {
    case CaseStatus::kPass: return "pass";
    case CaseStatus::kFail: return "fail";
    case CaseStatus::kError: return "error";
  }
  return "?";
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"symmetry", "duality", "invariants", "theorems", "maps"};
  return names;
}

std::vector<CaseInfo> list_cases(std::string_view suite) {
  if (!suite_known(suite)) throw Error(ErrorCode::kInvalidArgument, "unknown suite: " + std::string(suite));
  std::vector<CaseInfo> out;
  for (const auto& [s, c] : registry().cases) {
    if (suite == "all" || suite == s) out.push_back({c.name, s, c.tol});
  }
  std::sort(out.begin(), out.end(), [](const CaseInfo& x, const CaseInfo& y) { return x.name < y.name; });
  return out;
}

VerifyReport run_suite(std::string_view suite, const VerifyOptions& options) {
  if (!suite_known(suite)) throw Error(ErrorCode::kInvalidArgument, "unknown suite: " + std::string(suite));
  auto start = std::chrono::steady_clock::now();
  std::vector<const Case*> chosen;
  for (const auto& [s, c] : registry().cases) {
    if (suite == "all" || suite == s) chosen.push_back(&c);
  }
  std::sort(chosen.begin(), chosen.end(), [](const Case* x, const Case* y) { return x->name < y->name; });

  std::vector<CaseResult> results(chosen.size());
  run_indexed(static_cast<int>(chosen.size()), options.exec, [&](int i) {
    const Case& c = *chosen[static_cast<std::size_t>(i)];
    CaseResult& r = results[static_cast<std::size_t>(i)];
    r.name = c.name;
    r.tol = options.tol.value_or(c.tol);
    try {
      Outcome o = c.run(options.seed);
      r.residual = o.residual;
      r.detail = o.detail;
      r.status = std::isfinite(o.residual) && o.residual <= r.tol ? CaseStatus::kPass : CaseStatus::kFail;
    } catch (const std::exception& e) {
      r.residual = std::numeric_limits<double>::quiet_NaN();
      r.status = CaseStatus::kError;
      r.detail = e.what();
    }
  });

  VerifyReport rep;
  rep.suite = std::string(suite);
  rep.seed = options.seed;
  rep.cases = std::move(results);
  for (const CaseResult& r : rep.cases) {
    if (r.status == CaseStatus::kPass) ++rep.summary.pass;
    else if (r.status == CaseStatus::kFail) ++rep.summary.fail;
    else ++rep.summary.error;
  }
  rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::string to_json(const VerifyReport& report, bool with_time) {
  nlohmann::ordered_json j;
  j["suite"] = report.suite;
  j["seed"] = report.seed;
  nlohmann::ordered_json cases = nlohmann::ordered_json::array();
  for (const CaseResult& c : report.cases) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["status"] = std::string(to_string(c.status));
    // NaN has no JSON spelling.
    if (std::isfinite(c.residual)) jc["residual"] = c.residual;
    else jc["residual"] = nullptr;
    jc["tol"] = c.tol;
    jc["detail"] = c.detail;
    cases.push_back(std::move(jc));
  }
  j["cases"] = std::move(cases);
  j["summary"] = {{"pass", report.summary.pass}, {"fail", report.summary.fail}, {"error", report.summary.error}};
  if (with_time) j["wall_time_s"] = report.wall_time_s;
  return j.dump(2);
}

}  // namespace kepler_sym
