#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "kepler_sym/error.hpp"
#include "kepler_sym/orbit.hpp"
#include "kepler_sym/random.hpp"

using namespace kepler_sym;

namespace {

ErrorCode error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error");
  return ErrorCode::kInvalidArgument;
}

KeplerOrbit random_orbit(std::uint64_t k) {
  auto g = stream_rng(3, "orbit", k);
  double c = uniform(g, 0.3, 2.0), phi = uniform(g, -3.1, 3.1);
  double e = k % 3 == 0 ? uniform(g, 0.0, 0.95) : k % 3 == 1 ? 1.0 : uniform(g, 1.05, 3.0);
  return KeplerOrbit::from_abc(c * e * std::cos(phi), c * e * std::sin(phi), c);
}

}  // namespace

TEST_CASE("from_abc examples") {
  KeplerOrbit circle = KeplerOrbit::from_abc(0, 0, 1);
  CHECK(circle.conic_class() == ConicClass::kEllipse);
  KeplerOrbit par = KeplerOrbit::from_abc(1, 0, -1);
  CHECK(par.dual() == MinkVec{1, 0, 1});
  CHECK(par.conic_class() == ConicClass::kParabola);
  CHECK(KeplerOrbit::from_abc(2, 0, 1).conic_class() == ConicClass::kHyperbola);
  CHECK(error_of([] { KeplerOrbit::from_abc(1, 0, 0); }) == ErrorCode::kLineNotOrbit);
  CHECK(error_of([] { KeplerOrbit::from_abc(0, 0, 0); }) == ErrorCode::kZeroTriple);
}

TEST_CASE("conserved examples") {
  Conserved c0 = conserved(KeplerOrbit::from_abc(0, 0, 1));
  CHECK(c0.e == 0.0);
  CHECK(c0.E == -0.5);
  CHECK(c0.M == 1.0);
  Conserved c1 = conserved(KeplerOrbit::from_abc(0.5, 0, 1));
  CHECK(c1.e == doctest::Approx(0.5));
  CHECK(c1.E == doctest::Approx(-0.375));
  CHECK(c1.M == doctest::Approx(1.0));
  Conserved c2 = conserved(KeplerOrbit::from_abc(2, 0, 1));
  CHECK(c2.e == doctest::Approx(2.0));
  CHECK(c2.E == doctest::Approx(1.5));
  CHECK(c2.M == doctest::Approx(1.0));
}

TEST_CASE("radius examples") {
  CHECK(radius(KeplerOrbit::from_abc(0, 0, 1), 1.234) == doctest::Approx(1.0));
  CHECK(radius(KeplerOrbit::from_abc(1, 0, 1), 0.0) == 0.5);
  CHECK(error_of([] { radius(KeplerOrbit::from_abc(2, 0, 1), std::numbers::pi); }) ==
        ErrorCode::kOutsideBranch);
}

TEST_CASE("sample examples") {
  for (const PlanePoint& p : sample(KeplerOrbit::from_abc(0, 0, 1), 3)) {
    CHECK(std::abs(p.x * p.x + p.y * p.y - 1.0) <= 1e-12);
  }
  for (const PlanePoint& p : sample(KeplerOrbit::from_abc(0.5, 0, 1), 50)) {
    CHECK(std::abs(0.5 * p.x + p.r() - 1.0) <= 1e-12);
  }
  KeplerOrbit h = KeplerOrbit::from_abc(2, 0, 1);
  for (double t : sample_angles(h, 50)) CHECK(h.rho(t) > 0.0);
  CHECK(sample(h, 50).size() == 50);
}

TEST_CASE("repelling samples") {
  KeplerOrbit h = KeplerOrbit::from_abc(2, 0, 1);
  for (const PlanePoint& p : sample_repelling(h, 40)) {
    CHECK(contains(h, p) == Membership::kOnRepelling);
  }
  CHECK(error_of([] { sample_repelling(KeplerOrbit::from_abc(0.5, 0, 1), 10); }) ==
        ErrorCode::kOutsideBranch);
}

TEST_CASE("contains examples") {
  CHECK(contains(KeplerOrbit::from_abc(0, 0, 1), {1, 0}) == Membership::kOnAttractive);
  KeplerOrbit h = KeplerOrbit::from_abc(2, 0, 1);
  CHECK(contains(h, {-1, 0}) == Membership::kOff);
  CHECK(contains(h, {1, 0}) == Membership::kOnRepelling);
  CHECK(contains(h, {1.0 / 3.0, 0}) == Membership::kOnAttractive);
}

TEST_CASE("geometry examples") {
  OrbitGeometry g = geometry(KeplerOrbit::from_abc(0.5, 0, 1));
  CHECK(g.e == doctest::Approx(0.5));
  REQUIRE(g.semi_major);
  CHECK(*g.semi_major == doctest::Approx(4.0 / 3.0));
  CHECK(*g.semi_minor == doctest::Approx(2.0 / std::sqrt(3.0)));
  CHECK(g.latus_rectum == doctest::Approx(2.0));
  CHECK(g.pericenter_angle == 0.0);
  OrbitGeometry c = geometry(KeplerOrbit::from_abc(0, 0, 1));
  CHECK(*c.semi_major == doctest::Approx(1.0));
  CHECK(*c.semi_minor == doctest::Approx(1.0));
  CHECK(geometry(KeplerOrbit::from_abc(0, 1, 1)).pericenter_angle == doctest::Approx(std::numbers::pi / 2));
  OrbitGeometry p = geometry(KeplerOrbit::from_abc(1, 0, 1));
  CHECK_FALSE(p.semi_major);
  CHECK_FALSE(p.semi_minor);
}

TEST_CASE("semi-major axis times 2|E| is one") {
  for (std::uint64_t k = 0; k < 60; ++k) {
    KeplerOrbit o = random_orbit(k);
    if (o.conic_class() == ConicClass::kParabola) continue;
    OrbitGeometry g = geometry(o);
    CHECK(*g.semi_major * 2.0 * std::abs(g.energy) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("fit examples") {
  KeplerOrbit o = KeplerOrbit::from_abc(0.5, 0, 1);
  auto pts = sample(o, 5);
  ConicFit f = fit(pts);
  CHECK_FALSE(f.is_line);
  CHECK(f.residual <= 1e-12);
  CHECK(std::abs(f.dual.a - 0.5) <= 1e-12);
  CHECK(std::abs(f.dual.b) <= 1e-12);
  CHECK(std::abs(f.dual.c - 1.0) <= 1e-12);

  std::vector<PlanePoint> line = {{2, -1}, {2, 0.5}, {2, 3}};
  ConicFit fl = fit(line);
  CHECK(fl.is_line);
  CHECK(fl.dual.a == doctest::Approx(0.5));

  auto g = stream_rng(1, "perturb", 0);
  for (auto& p : pts) {
    p.x += uniform(g, -1e-6, 1e-6);
    p.y += uniform(g, -1e-6, 1e-6);
  }
  ConicFit fp = fit(pts);
  CHECK(fp.residual <= 1e-5);
  CHECK(std::abs(fp.dual.a - 0.5) <= 1e-4);
  CHECK(std::abs(fp.dual.c - 1.0) <= 1e-4);

  std::vector<PlanePoint> two = {{1, 0}, {0, 1}};
  CHECK(error_of([&] { fit(two); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("fit recovers exact samples of every class") {
  for (std::uint64_t k = 0; k < 30; ++k) {
    KeplerOrbit o = random_orbit(k);
    for (int n : {3, 7, 30}) {
      ConicFit f = fit(sample(o, n));
      REQUIRE_FALSE(f.is_line);
      KeplerOrbit r = f.orbit();
      double scale = 1.0 + std::abs(o.c());
      CHECK(std::abs(r.a() - o.a()) <= 1e-9 * scale);
      CHECK(std::abs(r.b() - o.b()) <= 1e-9 * scale);
      CHECK(std::abs(r.c() - o.c()) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("fit of repelling samples reports the branch") {
  KeplerOrbit h = KeplerOrbit::from_abc(2, 0.5, 1);
  ConicFit f = fit(sample_repelling(h, 10));
  CHECK(f.repelling);
  CHECK(f.dual.c < 0);
  CHECK(std::abs(f.dual.a - 2.0) <= 1e-9);
}

TEST_CASE("lift and project") {
  ConePoint q = lift({1, 0}, 1);
  CHECK(q.x == 1.0);
  CHECK(q.z == 1.0);
  ConePoint q2 = lift({3, 4}, -1);
  CHECK(q2.z == -5.0);
  PlanePoint p = project(lift({0.3, -0.7}, -1));
  CHECK(p.x == 0.3);
  CHECK(p.y == -0.7);
}

TEST_CASE("newton flow on the unit circle") {
  KeplerOrbit o = KeplerOrbit::from_abc(0, 0, 1);
  FlowPlan plan = default_flow_plan(o);
  auto traj = newton_flow(o, plan.steps, plan.dt);
  CHECK(traj.size() == static_cast<std::size_t>(plan.steps + 1));
  for (const PhaseState& s : traj) {
    CHECK(std::abs(std::hypot(s.x, s.y) - 1.0) <= 1e-8);
    CHECK(std::abs(energy(s) + 0.5) <= 1e-8);
  }
}

TEST_CASE("newton flow stays on the ellipse") {
  KeplerOrbit o = KeplerOrbit::from_abc(0.5, 0, 1);
  FlowPlan plan = default_flow_plan(o);
  double worst = 0.0;
  for (const PhaseState& s : newton_flow(o, plan.steps, plan.dt)) {
    worst = std::max(worst, std::abs(0.5 * s.x + std::hypot(s.x, s.y) - 1.0));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("newton flow conserves E and M on a hyperbola") {
  KeplerOrbit o = KeplerOrbit::from_abc(2, 0, 1);
  FlowPlan plan = default_flow_plan(o);
  auto traj = newton_flow(o, plan.steps, plan.dt);
  Conserved c = conserved(o);
  for (const PhaseState& s : traj) {
    CHECK(std::abs(energy(s) - c.E) <= 1e-8);
    CHECK(std::abs(std::abs(angular_momentum(s)) - c.M) <= 1e-10);
  }
}

TEST_CASE("conserved quantities match the flow for random orbits") {
  for (std::uint64_t k = 0; k < 100; ++k) {
    KeplerOrbit o = random_orbit(k);
    FlowPlan plan = default_flow_plan(o);
    auto traj = newton_flow(o, std::min(plan.steps, 2000), plan.dt);
    Conserved c = conserved(o);
    const PhaseState& s = traj.back();
    CHECK(std::abs(energy(s) - c.E) <= 1e-6 * std::max(1.0, std::abs(c.E)));
    CHECK(std::abs(std::abs(angular_momentum(s)) - c.M) <= 1e-6 * c.M);
  }
}
