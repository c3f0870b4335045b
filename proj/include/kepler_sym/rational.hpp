#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace kepler_sym {

// Exact fraction num/den with den > 0 and gcd(num, den) = 1. Operations that
// would overflow 64 bits return nullopt so callers can fall back to doubles.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT
  // Throws Error(kDivisionByZero) when den == 0.
  Rational(std::int64_t n, std::int64_t d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  std::string to_string() const;

  friend bool operator==(const Rational&, const Rational&) = default;

 private:
  struct Normalized {};
  // n/d already in lowest terms with d > 0.
  constexpr Rational(std::int64_t n, std::int64_t d, Normalized) : num_(n), den_(d) {}
  friend std::optional<Rational> make_normalized(__int128 n, __int128 d);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::optional<Rational> add(const Rational& x, const Rational& y);
std::optional<Rational> sub(const Rational& x, const Rational& y);
std::optional<Rational> mul(const Rational& x, const Rational& y);
// nullopt on overflow; throws Error(kDivisionByZero) when y == 0.
std::optional<Rational> div(const Rational& x, const Rational& y);
Rational negate(const Rational& x);

// x^e for rational e. Returns a value only when the result is an exact
// rational (integer powers, or perfect roots such as (9/4)^(1/2) = 3/2).
std::optional<Rational> pow_exact(const Rational& x, const Rational& e);

// Exact rational from a decimal literal ("2.5" -> 5/2); nullopt if the
// literal has too many significant digits to stay exact.
std::optional<Rational> rational_from_decimal(const std::string& digits);

}  // namespace kepler_sym
