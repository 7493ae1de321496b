#pragma once

// Reader for the canonical rendering grammar. Polynomials are order-0
// operators; '*' composes, '^' takes an unsigned exponent, '/' divides by a
// nonzero constant, and D[a,b,...] is the Taylor basis operator.

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hskernel/diffop.hpp"

namespace hsk {

class ParseError : public std::invalid_argument {
 public:
  ParseError(std::size_t column, const std::string& msg)
      : std::invalid_argument("column " + std::to_string(column + 1) + ": " + msg), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

template <CoefficientField F>
class ExprParser {
 public:
  using P = Poly<F>;
  using Op = DiffOp<F>;

  ExprParser(const Ring<F>& ring, std::vector<std::string> names, std::string_view text)
      : ring_(ring), names_(std::move(names)), s_(text) {
    if (names_.size() != ring.nvars) throw std::invalid_argument("variable name count differs from ring");
  }

  Op parse() {
    skip();
    if (pos_ == s_.size()) fail("empty expression");
    Op r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Op expr() {
    Op r = term();
    for (;;) {
      if (eat('+')) r += term();
      else if (eat('-')) r -= term();
      else return r;
    }
  }

  Op term() {
    Op r = unary();
    for (;;) {
      if (eat('*')) {
        r = op_compose(r, unary());
      } else if (eat('/')) {
        const std::size_t at = pos_;
        Op d = unary();
        const P c = as_poly(d, at);
        if (!c.is_constant() || c.is_zero()) {
          pos_ = at;
          fail("division only by a nonzero constant");
        }
        r = c.constant_term().inverse() * r;
      } else {
        return r;
      }
    }
  }

  Op unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  Op power() {
    Op base = atom();
    if (eat('^')) {
      skip();
      const auto e = unsigned_int("exponent");
      if (e > 4096) fail("exponent too large");
      return op_pow(base, static_cast<std::uint32_t>(e));
    }
    return base;
  }

  std::uint64_t unsigned_int(const char* what) {
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      fail(std::string("expected ") + what);
    std::uint64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(s_[pos_++] - '0');
      if (v > (1u << 30)) fail(std::string(what) + " too large");
    }
    return v;
  }

  Op atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Op r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      mpz_class z(std::string(s_.substr(start, pos_ - start)));
      return Op::multiplication(P::constant(ring_, ring_.field.from_integer(z)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string id(s_.substr(start, pos_ - start));
      if (id == "D" && pos_ < s_.size() && s_[pos_] == '[') return delta();
      for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == id) return Op::multiplication(P::variable(ring_, i));
      pos_ = start;
      fail("unknown variable '" + id + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Op delta() {
    ++pos_;  // '['
    MultiIndex a(ring_.nvars);
    std::size_t k = 0;
    for (;;) {
      const auto e = unsigned_int("index entry");
      if (k >= ring_.nvars) fail("D[...] has more than " + std::to_string(ring_.nvars) + " entries");
      a[k++] = static_cast<std::uint32_t>(e);
      if (eat(',')) continue;
      if (eat(']')) break;
      fail("expected ',' or ']'");
    }
    if (k != ring_.nvars)
      fail("D[...] has " + std::to_string(k) + " entries, ring has " + std::to_string(ring_.nvars) + " variables");
    return Op::delta(ring_, a);
  }

  P as_poly(const Op& op, std::size_t at) {
    if (!op.has_order_at_most(0)) {
      pos_ = at;
      fail("expected a polynomial, got an operator");
    }
    return op.coeff(MultiIndex(ring_.nvars));
  }

  Ring<F> ring_;
  std::vector<std::string> names_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

template <CoefficientField F>
DiffOp<F> parse_diffop(const Ring<F>& ring, const std::vector<std::string>& names, std::string_view text) {
  return ExprParser<F>(ring, names, text).parse();
}

template <CoefficientField F>
Poly<F> parse_poly(const Ring<F>& ring, const std::vector<std::string>& names, std::string_view text) {
  auto op = parse_diffop(ring, names, text);
  if (!op.has_order_at_most(0)) throw ParseError(0, "expected a polynomial, got an operator");
  return op.coeff(MultiIndex(ring.nvars));
}

}  // namespace hsk
