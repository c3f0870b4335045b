#include <doctest.h>

#include <cmath>

#include "kepler_sym/error.hpp"
#include "kepler_sym/invariants.hpp"

using namespace kepler_sym;

namespace {

SecondOrderODE ode(const char* f) { return {parse(f), default_box2()}; }

bool same(const Expr& a, const Expr& b, const Box& box) { return is_zero(a - b, box); }

std::vector<double> passing(const std::vector<ScanRow>& rows) {
  std::vector<double> out;
  for (const ScanRow& r : rows) {
    if (r.pass) out.push_back(r.alpha);
  }
  return out;
}

const Expr r = Expr::var("r");

}  // namespace

TEST_CASE("I1 examples") {
  CHECK(is_zero(I1(ode("0")), default_box2()));
  Box box = {{"x", {0, 1}}, {"y", {0.5, 2}}, {"p", {-1, 1}}};
  CHECK(is_zero(I1(ode("(y^2+p^2)/(2*(y+1))-y")), box));
  CHECK(is_zero(I1(ode("(x*p-y)^3")), box));
  CHECK_FALSE(is_zero(I1(ode("p^4")), box));
}

TEST_CASE("I2 examples") {
  CHECK(is_zero(I2(ode("0")), default_box2()));
  CHECK(is_zero(I2(ode("1 - y")), default_box2()));
  Expr i2 = I2(ode("(y^2+p^2)/(2*(y-1))-y"));
  for (double p : {-1.0, 0.0, 0.3, 2.0}) {
    CHECK(eval(i2, {{"x", 0.2}, {"y", 2.0}, {"p", p}}) == doctest::Approx(9.0).epsilon(1e-10));
  }
}

TEST_CASE("I2 of the fixed-energy equation is 9E^2/(E+rho)^3") {
  for (double E : {-1.0, -0.25, 0.5, 2.0}) {
    Box box = {{"x", {0, 1}}, {"y", {E < 0 ? -E + 0.1 : 0.5, 3}}, {"p", {-1, 1}}};
    SecondOrderODE o = fixed_E_ode(Expr(-1) / (r * r), Expr(-1) / r, E, box);
    Expr ref = Expr::real(9 * E * E) * pow(Expr::var("y") + Expr::real(E), Rational(-3));
    for (int k = 0; k < 16; ++k) {
      Bindings b = zero_test_sample(box, 5, k);
      double v = eval(I2(o), b), want = 9 * E * E / std::pow(E + b["y"], 3);
      CHECK(std::abs(v - want) <= 1e-10 * (1 + std::abs(want)));
      CHECK(std::abs(eval(ref, b) - want) <= 1e-12 * (1 + std::abs(want)));
    }
    CHECK(is_zero(I1(o), box));
  }
}

TEST_CASE("is_flat examples") {
  CHECK(is_flat(ode("0")));
  Box box = {{"x", {0, 1}}, {"y", {1.1, 3}}, {"p", {-1, 1}}};
  CHECK_FALSE(is_flat(fixed_E_ode(Expr(-1) / (r * r), Expr(-1) / r, -1.0, box)));
  CHECK(is_flat(fixed_M_ode(Expr(-1) / (r * r), 1.0)));
  Flatness f = flatness(ode("x*p^2"));
  CHECK(f.i1.zero);
  CHECK_FALSE(f.i2.zero);
  CHECK_FALSE(f.flat);
}

TEST_CASE("fixed_M_ode examples") {
  Box box = default_box2();
  CHECK(same(fixed_M_ode(Expr(-1) / (r * r), 1.0).f, parse("1 - y"), box));
  CHECK(same(fixed_M_ode(Expr(-1) * r, 1.0).f, parse("-y + y^(-3)"), box));
  SecondOrderODE cube = fixed_M_ode(Expr(-1) / (r * r * r), 1.0);
  CHECK(is_zero(cube.f, box));
  CHECK(is_flat(cube));
  CHECK(same(fixed_M_ode(Expr(-1) / (r * r), 2.0).f, parse("1/4 - y"), box));
  CHECK_THROWS_AS(fixed_M_ode(Expr(-1) / (r * r), 0.0), Error);
}

TEST_CASE("fixed_E_ode examples") {
  Box box = {{"x", {0, 1}}, {"y", {1.5, 3}}, {"p", {-1, 1}}};
  CHECK(same(fixed_E_ode(Expr(-1) / (r * r), Expr(-1) / r, -1.0, box).f,
             parse("(y^2+p^2)/(2*(y-1))-y"), box));
  SecondOrderODE zero = fixed_E_ode(Expr(-1) / (r * r), Expr(-1) / r, 0.0);
  CHECK(same(zero.f, parse("(y^2+p^2)/(2*y) - y"), default_box2()));
  CHECK(is_flat(zero));
  Box hooke = {{"x", {0, 1}}, {"y", {1, 2}}, {"p", {-1, 1}}};
  CHECK_FALSE(is_flat(fixed_E_ode(Expr(-1) * r, r * r / Expr(2), 1.0, hooke)));
}

TEST_CASE("fixed_E_ode rejects boxes outside the Hill region") {
  try {
    fixed_E_ode(Expr(-1) / (r * r), Expr(-1) / r, -1.0);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPositivity);
  }
}

TEST_CASE("central_3rd_order examples") {
  Box box = default_box3();
  Expr rho = Expr::var("rho");
  CHECK(same(central_3rd_order(rho * rho).F, parse("-rho1"), box));
  CHECK(same(central_3rd_order(Expr(1) / rho).F, parse("rho1*(-3*(rho2+rho)/rho - 1)"), box));
  CHECK(same(central_3rd_order(Expr(1)).F, parse("rho1*(-2*(rho2+rho)/rho - 1)"), box));
  try {
    central_3rd_order(rho - Expr(Rational(3, 2)));
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kVanishingForce);
  }
}

TEST_CASE("wunschmann examples") {
  Box box = default_box3();
  Expr rho = Expr::var("rho");
  CHECK(is_zero(wunschmann_residual(central_3rd_order(rho * rho)), box));
  CHECK(is_zero(wunschmann_residual(central_3rd_order(Expr(1) / rho)), box));
  CHECK_FALSE(is_zero(wunschmann_residual(central_3rd_order(rho * rho * rho)), box));
}

TEST_CASE("power law scans") {
  std::vector<double> w = {-3, -2.5, -2, -1.5, 0, 1, 2};
  CHECK(passing(power_law_scan(w, ScanKind::kWunschmann)) == std::vector<double>{-2, 1});
  std::vector<double> m = {-3, -2, -1, 1, 2};
  CHECK(passing(power_law_scan(m, ScanKind::kFixedMFlat)) == std::vector<double>{-3, -2});
  std::vector<double> z = {-2, -1, 1, 2};
  CHECK(passing(power_law_scan(z, ScanKind::kZeroEFlat)) == std::vector<double>{-2, 1, 2});
}

TEST_CASE("scan rows keep input order and alpha values") {
  std::vector<double> a = {1, -2, 0.5};
  auto rows = power_law_scan(a, ScanKind::kFixedEFlat);
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(rows[i].alpha == a[i]);
  ScanRow one = power_law_row(-2, ScanKind::kFixedEFlat);
  CHECK(one.pass == rows[1].pass);
  CHECK(one.residual == rows[1].residual);
}

TEST_CASE("number_from_double") {
  Number h = number_from_double(0.5);
  CHECK(h.exact());
  CHECK(h.rational() == Rational(1, 2));
  CHECK(number_from_double(-2.5).rational() == Rational(-5, 2));
  CHECK_FALSE(number_from_double(std::sqrt(2.0)).exact());
}
