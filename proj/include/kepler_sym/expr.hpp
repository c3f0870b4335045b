#pragma once

// Minimal computer algebra: immutable expression DAGs over named variables
// with exact rational constants, symbolic differentiation, evaluation, jet
// total derivatives and a seeded randomized zero test.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kepler_sym/rational.hpp"

namespace kepler_sym {

// A constant: exact rational when possible, IEEE double otherwise.
class Number {
 public:
  Number(Rational q) : exact_(true), q_(q), x_(q.to_double()) {}  // NOLINT
  static Number real(double x) { return Number(x, 0); }

  bool exact() const { return exact_; }
  const Rational& rational() const { return q_; }
  double value() const { return x_; }
  bool is_zero() const { return exact_ ? q_.is_zero() : x_ == 0.0; }
  bool is_one() const { return exact_ ? q_.is_one() : x_ == 1.0; }

  std::string to_string() const;

  friend Number operator+(const Number& a, const Number& b);
  friend Number operator*(const Number& a, const Number& b);
  friend Number operator-(const Number& a);

 private:
  Number(double x, int) : exact_(false), x_(x) {}

  bool exact_;
  Rational q_;
  double x_;
};

enum class ExprKind { kConst, kVar, kAdd, kMul, kDiv, kPow, kSin, kCos, kSqrt, kLn };

struct ExprNode;

class Expr {
 public:
  Expr();  // the constant 0
  Expr(Rational q);  // NOLINT
  Expr(std::int64_t n) : Expr(Rational(n)) {}  // NOLINT
  Expr(int n) : Expr(Rational(n)) {}  // NOLINT

  static Expr constant(Number n);
  static Expr real(double x);
  static Expr var(std::string name);

  ExprKind kind() const;
  bool is_constant() const { return kind() == ExprKind::kConst; }
  // Requires kind() == kConst.
  const Number& number() const;
  // Requires kind() == kVar.
  const std::string& name() const;
  // Operands: all terms of a sum or product; numerator and denominator of a
  // quotient; the base of a power; the argument of a function.
  const std::vector<Expr>& args() const;
  // Requires kind() == kPow.
  const Number& exponent() const;

  std::set<std::string> free_variables() const;
  // Fully parenthesized infix text accepted back by parse().
  std::string to_string() const;

  // Identity of the shared node; equal ids imply equal expressions.
  const ExprNode* id() const { return node_.get(); }

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);

 private:
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
  friend struct ExprBuilder;

  std::shared_ptr<const ExprNode> node_;
};

Expr sum(std::vector<Expr> terms);
Expr product(std::vector<Expr> factors);
Expr pow(const Expr& base, Number exponent);
Expr sin(const Expr& e);
Expr cos(const Expr& e);
Expr sqrt(const Expr& e);
Expr ln(const Expr& e);

using Bindings = std::map<std::string, double, std::less<>>;

// Grammar: expr := term (('+'|'-') term)*; term := factor (('*'|'/') factor)*;
// factor := '-' factor | base ('^' exponent)?; base := number | ident |
// ident '(' expr ')' | '(' expr ')'. Exponents must fold to constants.
// Throws SyntaxError (kSyntax or kUnknownFunction).
Expr parse(std::string_view text);

Expr diff(const Expr& e, std::string_view variable);

// Replaces every occurrence of `variable` by `replacement`.
Expr substitute(const Expr& e, std::string_view variable, const Expr& replacement);

// Throws Error with kUnboundVariable, kDivisionByZero, kNegativeSqrt,
// kNonPositiveLog or kPowerDomain.
double eval(const Expr& e, const Bindings& bindings);

struct TrackedValue {
  double value;
  // Largest magnitude of any subexpression met while evaluating.
  double max_intermediate;
};
TrackedValue eval_tracked(const Expr& e, const Bindings& bindings);

// Jet variables (x, y, p) for an ODE y'' = f, or (theta, rho, rho1, rho2)
// for rho''' = F. The total derivative is
//   D = d/d independent + sum_k jet[k+1] d/d jet[k] + rhs d/d jet.back().
struct JetContext {
  std::string independent;
  std::vector<std::string> jet;
  Expr rhs;
  // Extra names allowed to appear free in rhs.
  std::set<std::string> parameters;
};

JetContext order2_context(Expr f, std::string x = "x", std::string y = "y",
                          std::string p = "p");
JetContext order3_context(Expr F, std::string theta = "theta", std::string rho = "rho",
                          std::string rho1 = "rho1", std::string rho2 = "rho2");

// Throws Error(kJetContext) if ctx.rhs has variables outside the context.
Expr total_derivative(const Expr& e, const JetContext& ctx);

struct Interval {
  double lo;
  double hi;
};
using Box = std::map<std::string, Interval, std::less<>>;

struct ZeroTestOptions {
  int trials = 16;
  double tolerance = 1e-9;
  std::uint64_t seed = 0x5eed;
};

struct ZeroTestResult {
  bool zero;
  // max over samples of |value| / (1 + max_intermediate)
  double max_scaled_residual;
  double max_abs_value;
};

// Bindings for sample `index` of a zero test; depends only on (box, seed,
// index) so serial and parallel sweeps see identical points.
Bindings zero_test_sample(const Box& box, std::uint64_t seed, int index);

// Serial reference. Throws Error(kInvalidArgument) if a free variable has no
// interval; evaluation errors at sample points propagate.
ZeroTestResult zero_test(const Expr& e, const Box& box, const ZeroTestOptions& options = {});
bool is_zero(const Expr& e, const Box& box, int trials = 16);

}  // namespace kepler_sym
