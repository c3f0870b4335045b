#include <doctest.h>

#include <cmath>
#include <functional>

#include "kepler_sym/error.hpp"
#include "kepler_sym/maps.hpp"
#include "kepler_sym/random.hpp"
#include "kepler_sym/symmetry.hpp"
#include "oracles/oracles.hpp"

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

}  // namespace

TEST_CASE("square examples") {
  PlanePoint q = square({0, 1});
  CHECK(q.x == -1.0);
  CHECK(q.y == 0.0);
  CHECK(error_of([] { square({0, 0}); }) == ErrorCode::kOriginPoint);
}

TEST_CASE("square of the line x = 1 is the parabola x = 1 - y^2/4") {
  std::vector<PlanePoint> img;
  for (int i = 0; i < 20; ++i) {
    double t = -2.0 + 4.0 * i / 19.0;
    PlanePoint q = square({1, t});
    CHECK(std::abs(q.x - (1 - q.y * q.y / 4)) <= 1e-14);
    img.push_back(q);
  }
  ConicFit f = fit(img);
  CHECK(f.residual <= 1e-9);
  CHECK(f.orbit().conic_class() == ConicClass::kParabola);
  MinkVec pred = square_line_dual({1, 0, 0});
  CHECK(std::abs(f.dual.a - pred.a) <= 1e-9);
  CHECK(std::abs(f.dual.c - pred.c) <= 1e-9);
}

TEST_CASE("square maps random lines to parabolas") {
  for (int k = 0; k < 30; ++k) {
    auto g = stream_rng(2, "lines", static_cast<std::uint64_t>(k));
    double u = uniform(g, -2, 2), v = uniform(g, -2, 2);
    if (std::hypot(u, v) < 0.2) continue;
    // Points of ux + vy = 1.
    double n2 = u * u + v * v;
    PlanePoint foot{u / n2, v / n2};
    std::vector<PlanePoint> img;
    for (int i = 0; i < 20; ++i) {
      double s = uniform(g, -3, 3);
      img.push_back(square({foot.x - s * v, foot.y + s * u}));
    }
    ConicFit f = fit(img);
    CHECK(f.residual <= 1e-9);
    CHECK(std::abs(conserved(f.orbit()).e - 1.0) <= 1e-6);
    MinkVec pred = square_line_dual({u, v, 0});
    CHECK(std::abs(f.dual.a - pred.a) <= 1e-8 * (1 + n2));
    CHECK(std::abs(f.dual.b - pred.b) <= 1e-8 * (1 + n2));
    CHECK(std::abs(f.dual.c - pred.c) <= 1e-8 * (1 + n2));
  }
}

TEST_CASE("square of a Hooke ellipse has minor axis 2ab") {
  std::vector<PlanePoint> img;
  for (int i = 0; i < 40; ++i) {
    double t = 0.1 + i * 0.15;
    img.push_back(square({2 * std::cos(t), std::sin(t)}));
  }
  ConicFit f = fit(img);
  CHECK(f.residual <= 1e-9);
  OrbitGeometry g = geometry(f.orbit());
  REQUIRE(g.semi_minor);
  CHECK(2 * *g.semi_minor == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("flatten_M examples") {
  PlanePoint q = flatten_M({2.0 / 3.0, 0}, 1.0);
  CHECK(q.x == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(q.y == 0.0);
  MinkVec line = flatten_M_dual({0.5, 0, 1}, 1.0);
  CHECK(line == MinkVec{0.5, 0, 0});
  GroupElement g = GroupElement::from_blocks(Mat3::Identity(), Vec3(0, 0, -1), 1.0);
  MinkVec w = act_dual(g, {0.5, 0, 1});
  CHECK(std::abs(w.a - 0.5) <= 1e-15);
  CHECK(std::abs(w.c) <= 1e-15);
  CHECK(error_of([] { flatten_M({1, 0}, 1.0); }) == ErrorCode::kSingularRadius);
  CHECK(error_of([] { flatten_M({1, 0}, 0.0); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("flatten_M sends fixed-M orbits to lines") {
  for (int k = 0; k < 20; ++k) {
    auto g = stream_rng(4, "flatten", static_cast<std::uint64_t>(k));
    double M = uniform(g, 0.5, 1.5), e = uniform(g, 0.05, 0.9), phi = uniform(g, -3, 3);
    double c = 1 / (M * M);
    KeplerOrbit o = KeplerOrbit::from_abc(c * e * std::cos(phi), c * e * std::sin(phi), c);
    std::vector<PlanePoint> img;
    for (const PlanePoint& p : sample(o, 10)) {
      if (std::abs(1 - p.r() / (M * M)) < 1e-3) continue;
      img.push_back(flatten_M(p, M));
    }
    REQUIRE(img.size() >= 3);
    ConicFit f = fit(img);
    CHECK(f.is_line);
    CHECK(f.residual <= 1e-10);
    MinkVec pred = flatten_M_dual(o.dual(), M);
    CHECK(std::abs(f.dual.a - pred.a) <= 1e-9);
    CHECK(std::abs(f.dual.b - pred.b) <= 1e-9);
  }
}

TEST_CASE("hill_embed examples") {
  double s3 = std::sqrt(3.0);
  KeplerOrbit o = KeplerOrbit::from_abc(s3, 0, 1);
  CHECK(conserved(o).E == doctest::Approx(1.0));
  double r = radius(o, 0.0);
  CHECK(r == doctest::Approx((s3 - 1) / 2));
  PlanePoint q = hill_embed({r, 0}, 1.0);
  CHECK(std::abs(q.x - 1 / (s3 + 3)) <= 1e-12);
  MinkVec img = hill_dual(o.dual(), 1.0);
  CHECK(std::abs(img.c - 3.0) <= 1e-15);
  CHECK(conserved(KeplerOrbit::from_dual(img)).E == doctest::Approx(-1.0));
  for (const PlanePoint& p : sample(o, 20)) CHECK(hill_embed(p, 1.0).r() < 0.5);
}

TEST_CASE("hill dual forms agree through the sign identification") {
  for (int k = 0; k < 20; ++k) {
    auto g = stream_rng(7, "hill", static_cast<std::uint64_t>(k));
    double E = uniform(g, 0.2, 2), c = uniform(g, 0.2, 2), phi = uniform(g, -3, 3);
    double ab = std::sqrt(c * c + 2 * E * c);
    MinkVec v{ab * std::cos(phi), ab * std::sin(phi), c};
    MinkVec canon = hill_dual(v, E);
    // The signed representative flips c only.
    MinkVec refl = hill_dual_reflection({v.a, v.b, -v.c}, E);
    CHECK(std::abs(canon.c - refl.c) <= 1e-12 * (1 + c));
    CHECK(canon.a == refl.a);
    KeplerOrbit a = KeplerOrbit::from_dual(canon);
    CHECK(conserved(a).E == doctest::Approx(-E).epsilon(1e-12));
    KeplerOrbit o = KeplerOrbit::from_dual(v);
    for (const PlanePoint& p : sample(o, 20)) {
      CHECK(contains(a, hill_embed(p, E), 1e-8) == Membership::kOnAttractive);
    }
  }
}

TEST_CASE("repel_embed examples") {
  KeplerOrbit h = KeplerOrbit::from_abc(std::sqrt(3.0), 0, 1);
  for (const PlanePoint& p : sample_repelling(h, 30)) {
    double r = repel_embed(p, 1.0).r();
    CHECK(r > 0.5);
    CHECK(r < 1.0);
  }
  CHECK(error_of([] { repel_embed({0.5, 0}, 1.0); }) == ErrorCode::kSingularRadius);
}

TEST_CASE("hill and repel images of one hyperbola lie on one ellipse") {
  double E = 1.0;
  KeplerOrbit h = KeplerOrbit::from_abc(std::sqrt(3.0), 0, 1);
  MinkVec target = hill_dual(h.dual(), E);
  for (const PlanePoint& p : sample(h, 30)) CHECK(oracle::conic_residual(target, hill_embed(p, E)) <= 1e-10);
  for (const PlanePoint& p : sample_repelling(h, 30)) {
    CHECK(oracle::conic_residual(target, repel_embed(p, E)) <= 1e-10);
  }
}

TEST_CASE("parabola_chart examples") {
  PlanePoint p = parabola_chart(1, 1);
  CHECK(p.x == 0.0);
  CHECK(p.y == 2.0);
  MinkVec pred = parabola_chart_dual(1, 0, 0);
  CHECK(pred == MinkVec{0.5, 0, 0.5});
  CHECK(pred.a * p.x + pred.b * p.y + pred.c * p.r() == 1.0);
  PlanePoint q = parabola_chart(2, 4);
  CHECK(q.x == 0.75);
  CHECK(q.y == 1.0);
  CHECK(q.r() == 1.25);
  CHECK(error_of([] { parabola_chart(1, 0); }) == ErrorCode::kSingularRadius);
}

TEST_CASE("parabola_chart maps vertical parabolas onto the predicted orbits") {
  for (int k = 0; k < 30; ++k) {
    auto g = stream_rng(9, "chart", static_cast<std::uint64_t>(k));
    double A = uniform(g, -2, 2), B = uniform(g, -2, 2), C = uniform(g, -2, 2);
    MinkVec v = parabola_chart_dual(A, B, C);
    for (int i = 0; i < 20; ++i) {
      double X = uniform(g, -3, 3), Y = A * X * X + B * X + C;
      if (std::abs(Y) < 0.05) continue;
      PlanePoint p = parabola_chart(X, Y);
      double sheet = Y > 0 ? 1.0 : -1.0;
      double res = v.a * p.x + v.b * p.y + sheet * v.c * p.r() - 1.0;
      CHECK(std::abs(res) <= 1e-10 * (1 + (std::abs(v.a) + std::abs(v.b) + std::abs(v.c)) * p.r()));
    }
  }
}
