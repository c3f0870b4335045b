#include <doctest.h>

#include <atomic>
#include <cmath>
#include <cstring>

#include "kepler_sym/parallel.hpp"
#include "kepler_sym/random.hpp"

using namespace kepler_sym;

namespace {

std::vector<PlanePoint> points(int n) {
  auto g = stream_rng(31, "parallel", 0);
  std::vector<PlanePoint> out;
  for (int i = 0; i < n; ++i) out.push_back(PlanePoint::polar(uniform(g, 0.1, 3.0), uniform(g, -3.14, 3.14)));
  // Singular rows for flatten_M (M = 1) and repel (E = 1).
  out.push_back({1, 0});
  out.push_back({0.5, 0});
  return out;
}

bool bitwise_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool same(const std::vector<MappedPoint>& a, const std::vector<MappedPoint>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].error != b[i].error) return false;
    if (!a[i].error && !(bitwise_equal(a[i].point.x, b[i].point.x) && bitwise_equal(a[i].point.y, b[i].point.y))) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("run_indexed visits every index once") {
  for (Exec e : {Exec::kSerial, Exec::kOpenMP}) {
    std::vector<std::atomic<int>> hits(1000);
    run_indexed(1000, e, [&](int i) { hits[static_cast<std::size_t>(i)]++; });
    for (auto& h : hits) CHECK(h.load() == 1);
  }
}

TEST_CASE("run_indexed rethrows the lowest failing index") {
  for (Exec e : {Exec::kSerial, Exec::kOpenMP}) {
    try {
      run_indexed(500, e, [](int i) {
        if (i % 97 == 13) throw Error(ErrorCode::kInvalidArgument, std::to_string(i));
      });
      FAIL("no error");
    } catch (const Error& err) {
      CHECK(std::string(err.what()) == "13");
    }
  }
}

TEST_CASE("map_points is identical on both paths") {
  auto in = points(5000);
  for (auto [map, param] : {std::pair{PointMap::kSquare, 0.0}, std::pair{PointMap::kFlattenM, 1.0},
                            std::pair{PointMap::kHill, 1.0}, std::pair{PointMap::kRepel, 1.0}}) {
    auto s = map_points(map, param, in, Exec::kSerial);
    auto p = map_points(map, param, in, Exec::kOpenMP);
    CHECK(same(s, p));
  }
  auto f = map_points(PointMap::kFlattenM, 1.0, in, Exec::kSerial);
  CHECK(f[in.size() - 2].error == ErrorCode::kSingularRadius);
  auto r = map_points(PointMap::kRepel, 1.0, in, Exec::kOpenMP);
  CHECK(r.back().error == ErrorCode::kSingularRadius);
}

TEST_CASE("act_plane_batch matches act_plane") {
  auto in = points(2000);
  GroupElement g = exp(algebra(0.1, 0.2, -0.1, 0.05, 0.1, -0.2, 0.1));
  auto s = act_plane_batch(g, in, 1, Exec::kSerial);
  auto p = act_plane_batch(g, in, 1, Exec::kOpenMP);
  CHECK(same(s, p));
  for (std::size_t i = 0; i < in.size(); i += 97) {
    if (s[i].error) continue;
    PlanePoint q = act_plane(g, in[i], 1);
    CHECK(bitwise_equal(q.x, s[i].point.x));
    CHECK(bitwise_equal(q.y, s[i].point.y));
  }
}

TEST_CASE("zero_test_batch equals the serial zero test") {
  Expr e = parse("sin(x)^2 + cos(x)^2 - 1 + 1e-3*x*y");
  Box box = {{"x", {-3, 3}}, {"y", {0, 1}}};
  ZeroTestOptions opt;
  opt.trials = 257;
  ZeroTestResult ref = zero_test(e, box, opt);
  for (Exec ex : {Exec::kSerial, Exec::kOpenMP}) {
    ZeroTestResult r = zero_test_batch(e, box, opt, ex);
    CHECK(r.zero == ref.zero);
    CHECK(bitwise_equal(r.max_scaled_residual, ref.max_scaled_residual));
    CHECK(bitwise_equal(r.max_abs_value, ref.max_abs_value));
  }
}

TEST_CASE("power_law_scan_batch equals the serial scan") {
  std::vector<double> a = {-3, -2, -1, 0.5, 1, 2};
  for (ScanKind k : {ScanKind::kWunschmann, ScanKind::kFixedMFlat}) {
    auto ref = power_law_scan(a, k);
    auto s = power_law_scan_batch(a, k, {}, Exec::kSerial);
    auto p = power_law_scan_batch(a, k, {}, Exec::kOpenMP);
    REQUIRE(ref.size() == p.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(p[i].alpha == a[i]);
      CHECK(p[i].pass == ref[i].pass);
      CHECK(bitwise_equal(p[i].residual, ref[i].residual));
      CHECK(bitwise_equal(s[i].residual, ref[i].residual));
    }
  }
}

TEST_CASE("exec names") {
  CHECK(to_string(Exec::kSerial) == "serial");
  CHECK(to_string(Exec::kOpenMP) == "openmp");
  CHECK(max_threads() >= 1);
}
