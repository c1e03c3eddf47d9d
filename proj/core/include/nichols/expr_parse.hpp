#pragma once

#include "nichols/rational.hpp"
#include "nichols/scalar.hpp"

#include <cctype>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace nichols::detail {

// Recursive-descent parser for + - * / ^ ( ) over a field-like K.
// Identifiers are resolved by `symbol`; returning nullopt is a parse error.
// Exponents must be (possibly negative) integer literals.
template <class K>
class ExprParser {
 public:
  using SymbolFn = std::function<std::optional<K>(std::string_view)>;
  using FromRational = std::function<K(const Rational&)>;

  // With `implicit_product`, juxtaposed atoms multiply ("2 x1 (x2+x3)").
  ExprParser(std::string_view text, SymbolFn symbol, FromRational from_rational, bool implicit_product = false)
      : s_(text), symbol_(std::move(symbol)), from_rational_(std::move(from_rational)), implicit_(implicit_product) {}

  K parse() {
    K v = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError(why + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
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

  bool starts_atom() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return c == '(' || c == '_' || std::isalnum(static_cast<unsigned char>(c));
  }

  K sum() {
    skip();
    bool neg = false;
    while (true) {
      if (eat('-')) neg = !neg;
      else if (!eat('+')) break;
    }
    K acc = product();
    if (neg) acc = -acc;
    while (true) {
      if (eat('+')) acc = acc + product();
      else if (eat('-')) acc = acc - product();
      else break;
    }
    return acc;
  }

  K product() {
    K acc = power();
    while (true) {
      if (eat('*')) acc = acc * power();
      else if (eat('/')) acc = acc / power();
      else if (implicit_ && starts_atom()) acc = acc * power();
      else break;
    }
    return acc;
  }

  K power() {
    K base = atom();
    if (eat('^')) {
      bool paren = eat('(');
      bool neg = false;
      if (eat('-')) neg = true;
      else eat('+');
      skip();
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      int64_t e = std::stoll(std::string(s_.substr(start, pos_ - start)));
      if (paren && !eat(')')) fail("expected ')'");
      base = base.pow(neg ? -e : e);
    }
    return base;
  }

  K atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      K v = sum();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (c == '-' || c == '+') {
      ++pos_;
      K v = power();
      return c == '-' ? -v : v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return from_rational_(Rational::parse(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      auto name = s_.substr(start, pos_ - start);
      auto v = symbol_(name);
      if (!v) fail("unknown symbol '" + std::string(name) + "'");
      return *v;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view s_;
  size_t pos_ = 0;
  SymbolFn symbol_;
  FromRational from_rational_;
  bool implicit_ = false;
};

}  // namespace nichols::detail
