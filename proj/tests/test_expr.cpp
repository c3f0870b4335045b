#include <doctest.h>

#include <cmath>

#include "kepler_sym/error.hpp"
#include "kepler_sym/expr.hpp"
#include "kepler_sym/random.hpp"
#include "oracles/oracles.hpp"

using namespace kepler_sym;

namespace {

ErrorCode eval_error(const Expr& e, const Bindings& b) {
  try {
    eval(e, b);
  } catch (const Error& err) {
    return err.code();
  }
  FAIL("no error");
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_CASE("parse collects free variables") {
  Expr e = parse("(rho^2 + p^2)/(2*(rho+E)) - rho");
  CHECK(e.free_variables() == std::set<std::string>{"rho", "p", "E"});
}

TEST_CASE("parse reports the position of a syntax error") {
  try {
    parse("sin(");
    FAIL("parsed");
  } catch (const SyntaxError& e) {
    CHECK(e.code() == ErrorCode::kSyntax);
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(parse("2 +* 3"), SyntaxError);
  CHECK_THROWS_AS(parse("x^y"), SyntaxError);
}

TEST_CASE("unknown functions are a distinct error") {
  try {
    parse("tan(x)");
    FAIL("parsed");
  } catch (const SyntaxError& e) {
    CHECK(e.code() == ErrorCode::kUnknownFunction);
    CHECK(e.position() == 0);
  }
}

TEST_CASE("rational literals stay exact") {
  Expr e = parse("3/4");
  REQUIRE(e.is_constant());
  CHECK(e.number().exact());
  CHECK(e.number().rational() == Rational(3, 4));
  CHECK(eval(e, {}) == 0.75);
  Expr d = parse("2.5");
  CHECK(d.number().rational() == Rational(5, 2));
}

TEST_CASE("unary minus binds to a factor") {
  CHECK(eval(parse("-x^2"), {{"x", 3}}) == -9.0);
  CHECK(eval(parse("2*-x"), {{"x", 3}}) == -6.0);
}

TEST_CASE("diff examples") {
  Expr p = Expr::var("p");
  Expr d = diff(parse("p^3"), "p");
  CHECK(is_zero(d - Expr(3) * p * p, {{"p", {-2, 2}}}));
  CHECK(eval(diff(parse("sin(x)"), "x"), {{"x", 0}}) == doctest::Approx(1.0));
  Expr q = parse("(rho^2 + p^2)/(2*(rho+E))");
  Bindings at{{"rho", 2}, {"p", 1}, {"E", -1}};
  double v = eval(diff(q, "rho"), at);
  CHECK(v == doctest::Approx(-0.5).epsilon(1e-12));
  auto f = [&](double x) {
    Bindings b = at;
    b["rho"] = x;
    return eval(q, b);
  };
  CHECK(std::abs(v - oracle::fd1(f, 2.0, 1e-6)) <= 1e-8 * std::abs(v));
}

TEST_CASE("diff of a closed expression is zero") {
  CHECK(eval(diff(parse("sin(3/4)*ln(2) + 5^(1/2)"), "x"), {}) == 0.0);
  CHECK(eval(diff(parse("y^2"), "x"), {{"y", 1.3}}) == 0.0);
}

TEST_CASE("eval examples and distinct errors") {
  CHECK(eval(parse("a^2+b^2-c^2"), {{"a", 3}, {"b", 4}, {"c", 5}}) == 0.0);
  CHECK(eval(parse("r^(-2)"), {{"r", 2}}) == 0.25);
  CHECK(eval_error(parse("1/x"), {{"x", 0}}) == ErrorCode::kDivisionByZero);
  CHECK(eval_error(parse("sqrt(x)"), {{"x", -1}}) == ErrorCode::kNegativeSqrt);
  CHECK(eval_error(parse("ln(x)"), {{"x", 0}}) == ErrorCode::kNonPositiveLog);
  CHECK(eval_error(parse("x + y"), {{"x", 0}}) == ErrorCode::kUnboundVariable);
}

TEST_CASE("total derivative in the order-2 context") {
  Expr f = parse("x*p - y^2");
  JetContext ctx = order2_context(f);
  Box box = {{"x", {0, 1}}, {"y", {0.5, 2}}, {"p", {-1, 1}}};
  CHECK(is_zero(total_derivative(Expr::var("p"), ctx) - f, box));
  CHECK(is_zero(total_derivative(Expr::var("y"), ctx) - Expr::var("p"), box));
  CHECK(is_zero(total_derivative(Expr::var("x"), ctx) - Expr(1), box));
}

TEST_CASE("total derivative in the order-3 context") {
  Expr F = parse("-rho1");
  JetContext ctx = order3_context(F);
  Box box = {{"theta", {0, 1}}, {"rho", {1, 2}}, {"rho1", {-1, 1}}, {"rho2", {-1, 1}}};
  CHECK(is_zero(total_derivative(Expr::var("rho2"), ctx) - F, box));
  CHECK(is_zero(total_derivative(Expr::var("rho"), ctx) - Expr::var("rho1"), box));
}

TEST_CASE("jet context rejects foreign variables") {
  JetContext ctx = order2_context(parse("q + y"));
  CHECK_THROWS_AS(total_derivative(Expr::var("p"), ctx), Error);
}

TEST_CASE("zero test examples") {
  CHECK(is_zero(parse("sin(x)^2 + cos(x)^2 - 1"), {{"x", {-3, 3}}}));
  Expr d = parse("p^2");
  for (int i = 0; i < 4; ++i) d = diff(d, "p");
  CHECK(is_zero(d, {{"p", {-1, 1}}}));
  CHECK_FALSE(is_zero(parse("rho - p"), {{"rho", {1, 2}}, {"p", {1, 2}}}));
}

TEST_CASE("zero test surfaces evaluation errors") {
  CHECK_THROWS_AS(is_zero(parse("1/x"), {{"x", {0, 0}}}), Error);
  CHECK_THROWS_AS(is_zero(parse("x + y"), {{"x", {0, 1}}}), Error);
}

TEST_CASE("zero test is deterministic in the seed") {
  Expr e = parse("x*y - sin(x)");
  Box box = {{"x", {0, 1}}, {"y", {-1, 1}}};
  ZeroTestResult a = zero_test(e, box), b = zero_test(e, box);
  CHECK(a.max_scaled_residual == b.max_scaled_residual);
  ZeroTestOptions other;
  other.seed = 99;
  CHECK(zero_test(e, box, other).max_scaled_residual != a.max_scaled_residual);
}

TEST_CASE("print and parse round trip") {
  const char* texts[] = {"(rho^2 + p^2)/(2*(rho+E)) - rho", "sin(x)*cos(y)^3 - ln(x)/sqrt(y)",
                         "x^(-3/2) + 2.25*y - -x", "(x - y)^3/(1 + x^2)"};
  Box box = {{"x", {0.5, 2}}, {"y", {0.5, 2}}, {"rho", {0.5, 2}}, {"p", {-1, 1}}, {"E", {0.5, 1}}};
  for (const char* t : texts) {
    Expr e = parse(t);
    Expr back = parse(e.to_string());
    for (int k = 0; k < 10; ++k) {
      Bindings b = zero_test_sample(box, 3, k);
      CHECK(eval(back, b) == eval(e, b));
    }
  }
}

TEST_CASE("diff matches central differences at random points") {
  const char* texts[] = {"x^3*y - sqrt(x + y^2)", "sin(x*y)/(1 + x^2)", "ln(x)*cos(y) + x^(5/3)",
                         "(x - y)^4/(x + 2)"};
  Box box = {{"x", {0.5, 2}}, {"y", {-1, 1}}};
  for (const char* t : texts) {
    Expr e = parse(t);
    for (const char* v : {"x", "y"}) {
      Expr d = diff(e, v);
      for (int k = 0; k < 100; ++k) {
        Bindings b = zero_test_sample(box, 11, k);
        auto f = [&](double s) {
          Bindings bb = b;
          bb[v] = s;
          return eval(e, bb);
        };
        double ref = oracle::fd1(f, b[v], 1e-3);
        CHECK(std::abs(eval(d, b) - ref) <= 1e-6 * std::max(1.0, std::abs(ref)));
      }
    }
  }
}

TEST_CASE("differentiation keeps node kinds and irrational exponents") {
  Expr e = pow(Expr::var("r"), Number::real(std::sqrt(2.0)));
  Expr d = diff(e, "r");
  CHECK(eval(d, {{"r", 2.0}}) == doctest::Approx(std::sqrt(2.0) * std::pow(2.0, std::sqrt(2.0) - 1)));
}
