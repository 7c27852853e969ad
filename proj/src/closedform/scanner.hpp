#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "appell/affine.hpp"
#include "appell/errors.hpp"

namespace appell::detail {

/// Character cursor shared by the affine and closed-form parsers.
class Scanner {
 public:
  explicit Scanner(std::string_view s) : s_(s) {}

  std::size_t pos() const { return pos_; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip();
    return pos_ == s_.size();
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool peek_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }
  bool peek_alpha() { return std::isalpha(static_cast<unsigned char>(peek())) != 0; }

  Int integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return Int(std::string(s_.substr(start, pos_ - start)));
  }

  std::string identifier() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  /// Identifier at the cursor without consuming it.
  std::string peek_identifier() {
    std::size_t save = pos_;
    std::string id = identifier();
    pos_ = save;
    return id;
  }

  /// int ['/' int]
  Rat rational() {
    Int n = integer();
    if (accept('/')) {
      Int d = integer();
      if (d == 0) fail("zero denominator");
      return Rat(n, d);
    }
    return Rat(n);
  }

  Affine affine() {
    Affine out{0, 0};
    bool neg = accept('-');
    bool have_coef = false;
    Rat coef(1);
    if (peek_digit()) {
      coef = rational();
      have_coef = true;
    }
    bool star = accept('*');
    if (peek_identifier() == "a") {
      identifier();
      out.p = neg ? Rat(-coef) : coef;
      if (peek() == '+' || peek() == '-') {
        bool minus = peek() == '-';
        ++pos_;
        if (!peek_digit()) fail("expected a rational constant in affine form");
        Rat c = rational();
        out.q = minus ? Rat(-c) : c;
      }
    } else {
      if (star || !have_coef) fail("expected an affine form in a");
      out.q = neg ? Rat(-coef) : coef;
    }
    return out;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace appell::detail
