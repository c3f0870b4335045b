#include <cctype>
#include <cstdlib>
#include <string>

#include "kepler_sym/error.hpp"
#include "kepler_sym/expr.hpp"

namespace kepler_sym {
namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Expr parse_all() {
    Expr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(ErrorCode::kSyntax, pos_, what);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      fail(pos_ < s_.size() ? "expected '" + std::string(1, c) + "'"
                            : "unexpected end of input, expected '" + std::string(1, c) + "'");
    }
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = lhs + term();
      } else if (accept('-')) {
        lhs = lhs - term();
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = lhs * factor();
      } else if (accept('/')) {
        lhs = lhs / factor();
      } else {
        return lhs;
      }
    }
  }

  Expr factor() {
    if (accept('-')) return -factor();
    Expr b = base();
    skip_ws();
    if (accept('^')) {
      std::size_t at = pos_;
      Expr ex = exponent();
      if (!ex.is_constant()) {
        throw SyntaxError(ErrorCode::kSyntax, at, "exponent must be a constant");
      }
      return pow(b, ex.number());
    }
    return b;
  }

  Expr exponent() {
    if (accept('-')) return -exponent();
    Expr b = base();
    if (accept('^')) {
      Expr ex = exponent();
      if (!ex.is_constant()) fail("exponent must be a constant");
      return pow(b, ex.number());
    }
    return b;
  }

  Expr base() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        ++pos_;
      }
      std::string id(s_.substr(start, pos_ - start));
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '(') {
        ++pos_;
        Expr arg = expr();
        expect(')');
        if (id == "sin") return sin(arg);
        if (id == "cos") return cos(arg);
        if (id == "sqrt") return sqrt(arg);
        if (id == "ln") return ln(arg);
        throw SyntaxError(ErrorCode::kUnknownFunction, start, "unknown function '" + id + "'");
      }
      return Expr::var(std::move(id));
    }
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Expr number() {
    std::size_t start = pos_;
    bool seen_point = false;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '.' && !seen_point) {
        seen_point = true;
        ++pos_;
      } else {
        break;
      }
    }
    std::string mantissa(s_.substr(start, pos_ - start));
    if (mantissa == ".") {
      pos_ = start;
      fail("malformed number");
    }
    bool has_exp = false;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        has_exp = true;
      } else {
        pos_ = save;
      }
    }
    std::string literal(s_.substr(start, pos_ - start));
    if (!has_exp) {
      if (auto q = rational_from_decimal(mantissa)) return Expr(*q);
    }
    return Expr::real(std::strtod(literal.c_str(), nullptr));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace kepler_sym
