#include "kepler_sym/expr.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <unordered_map>

#include "kepler_sym/error.hpp"
#include "kepler_sym/random.hpp"

namespace kepler_sym {

struct ExprNode {
  ExprKind kind;
  Number value{Rational(0)};  // constant value or power exponent
  std::string name;
  std::vector<Expr> args;
};

// ---------------------------------------------------------------- Number

std::string Number::to_string() const {
  if (exact_) return q_.to_string();
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x_);
  (void)ec;
  return std::string(buf, end);
}

Number operator+(const Number& a, const Number& b) {
  if (a.exact() && b.exact()) {
    if (auto r = add(a.rational(), b.rational())) return *r;
  }
  return Number::real(a.value() + b.value());
}

Number operator*(const Number& a, const Number& b) {
  if (a.exact() && b.exact()) {
    if (auto r = mul(a.rational(), b.rational())) return *r;
  }
  return Number::real(a.value() * b.value());
}

Number operator-(const Number& a) {
  if (a.exact()) return negate(a.rational());
  return Number::real(-a.value());
}

// ---------------------------------------------------------------- builders

struct ExprBuilder {
  static Expr make(ExprKind kind, std::vector<Expr> args, Number value = Rational(0),
                   std::string name = {}) {
    auto node = std::make_shared<ExprNode>();
    node->kind = kind;
    node->args = std::move(args);
    node->value = value;
    node->name = std::move(name);
    return Expr(std::move(node));
  }
  static const ExprNode& node(const Expr& e) { return *e.node_; }
};

namespace {

const Expr& zero_expr() {
  static const Expr z = ExprBuilder::make(ExprKind::kConst, {}, Rational(0));
  return z;
}

bool is_const_value(const Expr& e, std::int64_t v) {
  if (!e.is_constant()) return false;
  const Number& n = e.number();
  return n.exact() ? n.rational() == Rational(v) : n.value() == static_cast<double>(v);
}

}  // namespace

Expr::Expr() : node_(zero_expr().node_) {}

Expr::Expr(Rational q) : node_(ExprBuilder::make(ExprKind::kConst, {}, q).node_) {}

Expr Expr::constant(Number n) { return ExprBuilder::make(ExprKind::kConst, {}, n); }
Expr Expr::real(double x) { return constant(Number::real(x)); }
Expr Expr::var(std::string name) {
  return ExprBuilder::make(ExprKind::kVar, {}, Rational(0), std::move(name));
}

ExprKind Expr::kind() const { return node_->kind; }
const Number& Expr::number() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
const std::vector<Expr>& Expr::args() const { return node_->args; }
const Number& Expr::exponent() const { return node_->value; }

Expr sum(std::vector<Expr> terms) {
  std::vector<Expr> flat;
  Number constant = Rational(0);
  for (auto& t : terms) {
    if (t.kind() == ExprKind::kAdd) {
      for (const auto& s : t.args()) {
        if (s.is_constant()) {
          constant = constant + s.number();
        } else {
          flat.push_back(s);
        }
      }
    } else if (t.is_constant()) {
      constant = constant + t.number();
    } else {
      flat.push_back(std::move(t));
    }
  }
  if (!constant.is_zero()) flat.insert(flat.begin(), Expr::constant(constant));
  if (flat.empty()) return Expr::constant(constant);
  if (flat.size() == 1) return flat.front();
  return ExprBuilder::make(ExprKind::kAdd, std::move(flat));
}

Expr product(std::vector<Expr> factors) {
  std::vector<Expr> flat;
  Number constant = Rational(1);
  for (auto& f : factors) {
    if (f.kind() == ExprKind::kMul) {
      for (const auto& s : f.args()) {
        if (s.is_constant()) {
          constant = constant * s.number();
        } else {
          flat.push_back(s);
        }
      }
    } else if (f.is_constant()) {
      constant = constant * f.number();
    } else {
      flat.push_back(std::move(f));
    }
  }
  if (constant.is_zero()) return Expr::constant(constant);
  if (!constant.is_one()) flat.insert(flat.begin(), Expr::constant(constant));
  if (flat.empty()) return Expr::constant(constant);
  if (flat.size() == 1) return flat.front();
  return ExprBuilder::make(ExprKind::kMul, std::move(flat));
}

Expr operator+(const Expr& a, const Expr& b) { return sum({a, b}); }
Expr operator-(const Expr& a) { return product({Expr(-1), a}); }
Expr operator-(const Expr& a, const Expr& b) { return sum({a, -b}); }
Expr operator*(const Expr& a, const Expr& b) { return product({a, b}); }

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_constant() && !b.number().is_zero()) {
    const Number& d = b.number();
    if (d.is_one()) return a;
    if (d.exact()) {
      if (auto inv = div(Rational(1), d.rational())) return product({a, Expr(*inv)});
    }
    if (a.is_constant()) return Expr::real(a.number().value() / d.value());
  }
  // 0/x -> 0 is a local rule; x = 0 is then not reported.
  if (a.is_constant() && a.number().is_zero() && !b.is_constant()) return a;
  return ExprBuilder::make(ExprKind::kDiv, {a, b});
}

Expr pow(const Expr& base, Number exponent) {
  if (exponent.is_zero()) return Expr(1);
  if (exponent.is_one()) return base;
  // (1/u)^n = u^-n and (u^m)^k = u^(mk) for integer k.
  if (base.kind() == ExprKind::kDiv && is_const_value(base.args()[0], 1)) {
    return pow(base.args()[1], -exponent);
  }
  if (base.kind() == ExprKind::kPow && exponent.exact() && exponent.rational().is_integer()) {
    return pow(base.args()[0], base.exponent() * exponent);
  }
  if (base.is_constant()) {
    const Number& b = base.number();
    if (b.exact() && exponent.exact() && !(b.is_zero() && exponent.rational().sign() < 0)) {
      if (auto r = pow_exact(b.rational(), exponent.rational())) return Expr(*r);
    }
    if (!b.exact() && b.value() > 0.0) {
      double v = std::pow(b.value(), exponent.value());
      if (std::isfinite(v)) return Expr::real(v);
    }
  }
  return ExprBuilder::make(ExprKind::kPow, {base}, exponent);
}

Expr sin(const Expr& e) {
  if (is_const_value(e, 0)) return Expr(0);
  return ExprBuilder::make(ExprKind::kSin, {e});
}

Expr cos(const Expr& e) {
  if (is_const_value(e, 0)) return Expr(1);
  return ExprBuilder::make(ExprKind::kCos, {e});
}

Expr sqrt(const Expr& e) {
  if (e.is_constant() && e.number().exact() && e.number().rational().sign() >= 0) {
    if (auto r = pow_exact(e.number().rational(), Rational(1, 2))) return Expr(*r);
  }
  return ExprBuilder::make(ExprKind::kSqrt, {e});
}

Expr ln(const Expr& e) {
  if (is_const_value(e, 1)) return Expr(0);
  return ExprBuilder::make(ExprKind::kLn, {e});
}

// ---------------------------------------------------------------- queries

std::set<std::string> Expr::free_variables() const {
  std::set<std::string> out;
  std::set<const ExprNode*> seen;
  std::vector<const Expr*> stack{this};
  while (!stack.empty()) {
    const Expr* e = stack.back();
    stack.pop_back();
    if (!seen.insert(e->id()).second) continue;
    if (e->kind() == ExprKind::kVar) out.insert(e->name());
    for (const auto& a : e->args()) stack.push_back(&a);
  }
  return out;
}

namespace {

bool is_atomic(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::kVar:
    case ExprKind::kSin:
    case ExprKind::kCos:
    case ExprKind::kSqrt:
    case ExprKind::kLn:
      return true;
    case ExprKind::kConst:
      return e.number().exact() && e.number().rational().is_integer() &&
             e.number().rational().sign() >= 0;
    default:
      return false;
  }
}

void print(const Expr& e, std::string& out);

void print_operand(const Expr& e, std::string& out) {
  if (is_atomic(e)) {
    print(e, out);
  } else {
    out += '(';
    print(e, out);
    out += ')';
  }
}

void print_function(const char* name, const Expr& arg, std::string& out) {
  out += name;
  out += '(';
  print(arg, out);
  out += ')';
}

void print(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case ExprKind::kConst:
      out += e.number().to_string();
      return;
    case ExprKind::kVar:
      out += e.name();
      return;
    case ExprKind::kAdd:
      for (std::size_t i = 0; i < e.args().size(); ++i) {
        if (i) out += " + ";
        print_operand(e.args()[i], out);
      }
      return;
    case ExprKind::kMul:
      for (std::size_t i = 0; i < e.args().size(); ++i) {
        if (i) out += '*';
        print_operand(e.args()[i], out);
      }
      return;
    case ExprKind::kDiv:
      print_operand(e.args()[0], out);
      out += '/';
      print_operand(e.args()[1], out);
      return;
    case ExprKind::kPow: {
      print_operand(e.args()[0], out);
      out += '^';
      print_operand(Expr::constant(e.exponent()), out);
      return;
    }
    case ExprKind::kSin: print_function("sin", e.args()[0], out); return;
    case ExprKind::kCos: print_function("cos", e.args()[0], out); return;
    case ExprKind::kSqrt: print_function("sqrt", e.args()[0], out); return;
    case ExprKind::kLn: print_function("ln", e.args()[0], out); return;
  }
}

}  // namespace

std::string Expr::to_string() const {
  std::string out;
  print(*this, out);
  return out;
}

// ---------------------------------------------------------------- calculus

namespace {

class Differentiator {
 public:
  explicit Differentiator(std::string_view v) : v_(v) {}

  Expr operator()(const Expr& e) {
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    Expr d = compute(e);
    memo_.emplace(e.id(), d);
    return d;
  }

 private:
  Expr compute(const Expr& e) {
    const auto& a = e.args();
    switch (e.kind()) {
      case ExprKind::kConst:
        return Expr(0);
      case ExprKind::kVar:
        return e.name() == v_ ? Expr(1) : Expr(0);
      case ExprKind::kAdd: {
        std::vector<Expr> terms;
        terms.reserve(a.size());
        for (const auto& t : a) terms.push_back((*this)(t));
        return sum(std::move(terms));
      }
      case ExprKind::kMul: {
        std::vector<Expr> terms;
        for (std::size_t i = 0; i < a.size(); ++i) {
          Expr di = (*this)(a[i]);
          if (di.is_constant() && di.number().is_zero()) continue;
          std::vector<Expr> factors;
          factors.reserve(a.size());
          for (std::size_t j = 0; j < a.size(); ++j) factors.push_back(j == i ? di : a[j]);
          terms.push_back(product(std::move(factors)));
        }
        return sum(std::move(terms));
      }
      case ExprKind::kDiv: {
        const Expr& u = a[0];
        const Expr& w = a[1];
        Expr du = (*this)(u);
        Expr dw = (*this)(w);
        // Negative powers keep exponents growing linearly under repeated d/dv.
        return du / w - u * dw * pow(w, Rational(-2));
      }
      case ExprKind::kPow: {
        const Number& n = e.exponent();
        return product({Expr::constant(n), pow(a[0], n + Number(Rational(-1))), (*this)(a[0])});
      }
      case ExprKind::kSin:
        return cos(a[0]) * (*this)(a[0]);
      case ExprKind::kCos:
        return -(sin(a[0]) * (*this)(a[0]));
      case ExprKind::kSqrt:
        return (*this)(a[0]) / (Expr(2) * e);
      case ExprKind::kLn:
        return (*this)(a[0]) / a[0];
    }
    return Expr(0);
  }

  std::string v_;
  std::unordered_map<const ExprNode*, Expr> memo_;
};

class Substituter {
 public:
  Substituter(std::string_view v, const Expr& r) : v_(v), r_(r) {}

  Expr operator()(const Expr& e) {
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    Expr s = compute(e);
    memo_.emplace(e.id(), s);
    return s;
  }

 private:
  Expr compute(const Expr& e) {
    const auto& a = e.args();
    switch (e.kind()) {
      case ExprKind::kConst: return e;
      case ExprKind::kVar: return e.name() == v_ ? r_ : e;
      case ExprKind::kAdd:
      case ExprKind::kMul: {
        std::vector<Expr> parts;
        parts.reserve(a.size());
        for (const auto& t : a) parts.push_back((*this)(t));
        return e.kind() == ExprKind::kAdd ? sum(std::move(parts)) : product(std::move(parts));
      }
      case ExprKind::kDiv: return (*this)(a[0]) / (*this)(a[1]);
      case ExprKind::kPow: return pow((*this)(a[0]), e.exponent());
      case ExprKind::kSin: return sin((*this)(a[0]));
      case ExprKind::kCos: return cos((*this)(a[0]));
      case ExprKind::kSqrt: return sqrt((*this)(a[0]));
      case ExprKind::kLn: return ln((*this)(a[0]));
    }
    return e;
  }

  std::string v_;
  Expr r_;
  std::unordered_map<const ExprNode*, Expr> memo_;
};

}  // namespace

Expr diff(const Expr& e, std::string_view variable) { return Differentiator(variable)(e); }

Expr substitute(const Expr& e, std::string_view variable, const Expr& replacement) {
  return Substituter(variable, replacement)(e);
}

// ---------------------------------------------------------------- evaluation

namespace {

double power(double base, const Number& exponent) {
  if (exponent.exact()) {
    const Rational& q = exponent.rational();
    if (base == 0.0 && q.sign() < 0) {
      throw Error(ErrorCode::kDivisionByZero, "zero raised to a negative power");
    }
    if (q.is_integer()) return std::pow(base, static_cast<double>(q.num()));
    if (base < 0.0) {
      if (q.den() % 2 == 0) {
        throw Error(ErrorCode::kPowerDomain, "even root of a negative number");
      }
      double m = std::pow(-base, exponent.value());
      return (q.num() % 2 != 0) ? -m : m;
    }
    return std::pow(base, exponent.value());
  }
  if (base < 0.0) throw Error(ErrorCode::kPowerDomain, "negative base with real exponent");
  if (base == 0.0 && exponent.value() < 0.0) {
    throw Error(ErrorCode::kDivisionByZero, "zero raised to a negative power");
  }
  return std::pow(base, exponent.value());
}

class Evaluator {
 public:
  explicit Evaluator(const Bindings& b) : b_(b) {}

  double operator()(const Expr& e) {
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    double v = compute(e);
    max_ = std::max(max_, std::abs(v));
    memo_.emplace(e.id(), v);
    return v;
  }

  double max_intermediate() const { return max_; }

 private:
  double compute(const Expr& e) {
    const auto& a = e.args();
    switch (e.kind()) {
      case ExprKind::kConst:
        return e.number().value();
      case ExprKind::kVar: {
        auto it = b_.find(e.name());
        if (it == b_.end()) {
          throw Error(ErrorCode::kUnboundVariable, "unbound variable '" + e.name() + "'");
        }
        return it->second;
      }
      case ExprKind::kAdd: {
        double s = 0.0;
        for (const auto& t : a) s += (*this)(t);
        return s;
      }
      case ExprKind::kMul: {
        double p = 1.0;
        for (const auto& t : a) p *= (*this)(t);
        return p;
      }
      case ExprKind::kDiv: {
        double n = (*this)(a[0]);
        double d = (*this)(a[1]);
        if (d == 0.0) throw Error(ErrorCode::kDivisionByZero, "division by zero");
        return n / d;
      }
      case ExprKind::kPow:
        return power((*this)(a[0]), e.exponent());
      case ExprKind::kSin:
        return std::sin((*this)(a[0]));
      case ExprKind::kCos:
        return std::cos((*this)(a[0]));
      case ExprKind::kSqrt: {
        double x = (*this)(a[0]);
        if (x < 0.0) throw Error(ErrorCode::kNegativeSqrt, "sqrt of negative argument");
        return std::sqrt(x);
      }
      case ExprKind::kLn: {
        double x = (*this)(a[0]);
        if (x <= 0.0) throw Error(ErrorCode::kNonPositiveLog, "ln of non-positive argument");
        return std::log(x);
      }
    }
    return 0.0;
  }

  const Bindings& b_;
  std::unordered_map<const ExprNode*, double> memo_;
  double max_ = 0.0;
};

}  // namespace

double eval(const Expr& e, const Bindings& bindings) { return Evaluator(bindings)(e); }

TrackedValue eval_tracked(const Expr& e, const Bindings& bindings) {
  Evaluator ev(bindings);
  double v = ev(e);
  return {v, ev.max_intermediate()};
}

// ---------------------------------------------------------------- jets

JetContext order2_context(Expr f, std::string x, std::string y, std::string p) {
  return JetContext{std::move(x), {std::move(y), std::move(p)}, std::move(f), {}};
}

JetContext order3_context(Expr F, std::string theta, std::string rho, std::string rho1,
                          std::string rho2) {
  return JetContext{std::move(theta), {std::move(rho), std::move(rho1), std::move(rho2)},
                    std::move(F), {}};
}

Expr total_derivative(const Expr& e, const JetContext& ctx) {
  if (ctx.jet.empty()) throw Error(ErrorCode::kJetContext, "jet context without jet variables");
  for (const auto& v : ctx.rhs.free_variables()) {
    bool known = v == ctx.independent || ctx.parameters.count(v) > 0 ||
                 std::find(ctx.jet.begin(), ctx.jet.end(), v) != ctx.jet.end();
    if (!known) {
      throw Error(ErrorCode::kJetContext,
                  "right-hand side uses '" + v + "' outside the declared jet variables");
    }
  }
  std::vector<Expr> terms{diff(e, ctx.independent)};
  for (std::size_t k = 0; k + 1 < ctx.jet.size(); ++k) {
    terms.push_back(Expr::var(ctx.jet[k + 1]) * diff(e, ctx.jet[k]));
  }
  terms.push_back(ctx.rhs * diff(e, ctx.jet.back()));
  return sum(std::move(terms));
}

// ---------------------------------------------------------------- zero test

Bindings zero_test_sample(const Box& box, std::uint64_t seed, int index) {
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(index))));
  Bindings b;
  for (const auto& [name, iv] : box) b[name] = uniform(rng, iv.lo, iv.hi);
  return b;
}

ZeroTestResult zero_test(const Expr& e, const Box& box, const ZeroTestOptions& options) {
  for (const auto& v : e.free_variables()) {
    if (box.find(v) == box.end()) {
      throw Error(ErrorCode::kInvalidArgument, "no interval for variable '" + v + "'");
    }
  }
  ZeroTestResult result{true, 0.0, 0.0};
  for (int i = 0; i < options.trials; ++i) {
    TrackedValue tv = eval_tracked(e, zero_test_sample(box, options.seed, i));
    double scaled = std::abs(tv.value) / (1.0 + tv.max_intermediate);
    result.max_scaled_residual = std::max(result.max_scaled_residual, scaled);
    result.max_abs_value = std::max(result.max_abs_value, std::abs(tv.value));
    if (!(scaled <= options.tolerance)) result.zero = false;
  }
  return result;
}

bool is_zero(const Expr& e, const Box& box, int trials) {
  ZeroTestOptions o;
  o.trials = trials;
  return zero_test(e, box, o).zero;
}

}  // namespace kepler_sym
