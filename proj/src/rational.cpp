#include "kepler_sym/rational.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "kepler_sym/error.hpp"

namespace kepler_sym {
namespace {

using i128 = __int128;

constexpr i128 kMax = std::numeric_limits<std::int64_t>::max();

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

std::optional<Rational> make_normalized(i128 n, i128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  if (n > kMax || n < -kMax || d > kMax) return std::nullopt;
  return Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d),
                  Rational::Normalized{});
}

namespace {

// Integer k-th root if exact.
std::optional<std::int64_t> exact_root(std::int64_t v, std::int64_t k) {
  if (v < 0) {
    if (k % 2 == 0) return std::nullopt;
    auto r = exact_root(-v, k);
    if (!r) return std::nullopt;
    return -*r;
  }
  if (v == 0 || v == 1) return v;
  auto guess = static_cast<std::int64_t>(
      std::llround(std::pow(static_cast<double>(v), 1.0 / static_cast<double>(k))));
  for (std::int64_t c = std::max<std::int64_t>(guess - 1, 0); c <= guess + 1; ++c) {
    i128 p = 1;
    bool over = false;
    for (std::int64_t i = 0; i < k; ++i) {
      p *= c;
      if (p > kMax) {
        over = true;
        break;
      }
    }
    if (!over && p == v) return c;
  }
  return std::nullopt;
}

std::optional<Rational> ipow(const Rational& x, std::int64_t n) {
  if (n < 0) {
    if (x.is_zero()) throw Error(ErrorCode::kDivisionByZero, "zero raised to a negative power");
    auto p = ipow(x, -n);
    if (!p) return std::nullopt;
    return div(Rational(1), *p);
  }
  Rational result(1);
  Rational base = x;
  while (n > 0) {
    if (n & 1) {
      auto r = mul(result, base);
      if (!r) return std::nullopt;
      result = *r;
    }
    n >>= 1;
    if (n > 0) {
      auto b = mul(base, base);
      if (!b) return std::nullopt;
      base = *b;
    }
  }
  return result;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw Error(ErrorCode::kDivisionByZero, "rational with zero denominator");
  auto r = make_normalized(n, d);
  num_ = r->num_;
  den_ = r->den_;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::optional<Rational> add(const Rational& x, const Rational& y) {
  return make_normalized(static_cast<i128>(x.num()) * y.den() + static_cast<i128>(y.num()) * x.den(),
              static_cast<i128>(x.den()) * y.den());
}

std::optional<Rational> sub(const Rational& x, const Rational& y) {
  return add(x, negate(y));
}

std::optional<Rational> mul(const Rational& x, const Rational& y) {
  return make_normalized(static_cast<i128>(x.num()) * y.num(), static_cast<i128>(x.den()) * y.den());
}

std::optional<Rational> div(const Rational& x, const Rational& y) {
  if (y.is_zero()) throw Error(ErrorCode::kDivisionByZero, "division by zero");
  return make_normalized(static_cast<i128>(x.num()) * y.den(), static_cast<i128>(x.den()) * y.num());
}

Rational negate(const Rational& x) { return Rational(-x.num(), x.den()); }

std::optional<Rational> pow_exact(const Rational& x, const Rational& e) {
  if (e.is_integer()) return ipow(x, e.num());
  // x^(p/q) = (x^(1/q))^p, exact only if both num and den are perfect q-th roots.
  if (e.den() > 64) return std::nullopt;
  auto rn = exact_root(x.num(), e.den());
  auto rd = exact_root(x.den(), e.den());
  if (!rn || !rd) return std::nullopt;
  return ipow(Rational(*rn, *rd), e.num());
}

std::optional<Rational> rational_from_decimal(const std::string& digits) {
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool after_point = false;
  int significant = 0;
  for (char ch : digits) {
    if (ch == '.') {
      after_point = true;
      continue;
    }
    if (ch < '0' || ch > '9') return std::nullopt;
    if (num != 0 || ch != '0') ++significant;
    if (significant > 15) return std::nullopt;
    num = num * 10 + (ch - '0');
    if (after_point) {
      if (den > std::numeric_limits<std::int64_t>::max() / 10) return std::nullopt;
      den *= 10;
    }
  }
  return Rational(num, den);
}

}  // namespace kepler_sym
