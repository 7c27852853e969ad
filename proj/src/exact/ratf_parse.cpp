#include <cctype>

#include "appell/errors.hpp"
#include "appell/ratfunc.hpp"

namespace appell {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  RatF parse() {
    RatF r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return r;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  RatF expr() {
    RatF r;
    if (accept('-')) {
      r = -term();
    } else {
      accept('+');
      r = term();
    }
    while (true) {
      if (accept('+')) {
        r += term();
      } else if (accept('-')) {
        r -= term();
      } else {
        return r;
      }
    }
  }

  RatF term() {
    RatF r = power();
    while (true) {
      if (accept('*')) {
        r *= power();
      } else if (accept('/')) {
        std::size_t at = pos_;
        RatF d = power();
        if (d.is_zero()) throw ParseError("division by zero", at);
        r /= d;
      } else {
        return r;
      }
    }
  }

  RatF power() {
    RatF b = atom();
    if (accept('^')) {
      skip();
      bool neg = accept('-');
      long e = integer();
      b = b.pow(neg ? -e : e);
    }
    return b;
  }

  long integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    if (pos_ - start > 6) fail("integer too large");
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }

  RatF atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char ch = s_[pos_];
    if (accept('(')) {
      RatF r = expr();
      expect(')');
      return r;
    }
    if (accept('-')) return -atom();
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RatF(Rat(std::string(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string_view name = s_.substr(start, pos_ - start);
      if (name == "poch") {
        expect('(');
        RatF base = expr();
        expect(',');
        long count = integer();
        expect(')');
        if (base.den().is_constant()) {
          Poly b = base.num() * (Rat(1) / base.den().constant_value());
          return pochhammer_symbolic(b, static_cast<unsigned>(count));
        }
        RatF r(1);
        for (long k = 0; k < count; ++k) r *= base + RatF(k);
        return r;
      }
      if (auto v = var_from_name(name)) return RatF::variable(*v);
      pos_ = start;
      fail("unknown identifier '" + std::string(name) + "'");
    }
    fail(std::string("unexpected character '") + ch + "'");
  }
};

}  // namespace

RatF parse_ratf(std::string_view text) { return Parser(text).parse(); }

}  // namespace appell
