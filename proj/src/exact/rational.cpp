#include "appell/rational.hpp"

#include <cctype>

#include "appell/errors.hpp"

namespace appell {

Rat parse_rat(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  std::string_view t = text.substr(b, e - b);
  if (t.empty()) throw ParseError("empty rational", b);

  std::size_t pos = 0;
  bool neg = false;
  if (t[0] == '+' || t[0] == '-') {
    neg = t[0] == '-';
    pos = 1;
  }
  auto digits = [&](std::size_t from) {
    std::size_t i = from;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
    return i;
  };
  std::size_t num_end = digits(pos);
  if (num_end == pos) throw ParseError("expected digits in rational '" + std::string(t) + "'", b + pos);
  Int num(std::string(t.substr(pos, num_end - pos)));
  Int den = 1;
  if (num_end < t.size()) {
    if (t[num_end] != '/') throw ParseError("unexpected character in rational '" + std::string(t) + "'", b + num_end);
    std::size_t den_end = digits(num_end + 1);
    if (den_end == num_end + 1 || den_end != t.size())
      throw ParseError("malformed denominator in rational '" + std::string(t) + "'", b + num_end + 1);
    den = Int(std::string(t.substr(num_end + 1)));
    if (den == 0) throw ParseError("zero denominator in rational '" + std::string(t) + "'", b + num_end + 1);
  }
  Rat q(neg ? Int(-num) : num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rat& q) { return q.get_str(); }

Rat pow(const Rat& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) throw DivisionByZero("0 raised to a negative power");
    return pow(Rat(1) / base, -exponent);
  }
  Int num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  Rat r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace appell
