#include <doctest.h>

#include "appell/errors.hpp"
#include "appell/ratfunc.hpp"

using namespace appell;

namespace {
RatF P(const char* s) { return parse_ratf(s); }
Assignment at_a(const Rat& v) {
  Assignment p;
  p[static_cast<std::size_t>(Var::a)] = v;
  return p;
}
}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rat("3/6") == Rat(1, 2));
  CHECK(parse_rat(" -7 ") == Rat(-7));
  CHECK(to_string(parse_rat("-4/6")) == "-2/3");
  CHECK_THROWS_AS(parse_rat("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rat("x"), ParseError);
  CHECK(pow(Rat(2, 3), -2) == Rat(9, 4));
}

TEST_CASE("polynomial basics") {
  Poly a = Poly::variable(Var::a);
  Poly b = Poly::variable(Var::b1);
  Poly f = (a + b) * (a - b);
  CHECK(f == a * a - b * b);
  CHECK(f.to_string() == "a^2-b1^2");
  CHECK(f.total_degree() == 2);
  CHECK(f.degree(Var::b1) == 2);
  auto q = f.divide_exact(a + b);
  REQUIRE(q);
  CHECK(*q == a - b);
  CHECK_FALSE((a * a + Poly(1)).divide_exact(a + Poly(1)));
  CHECK(((a + Poly(Rat(1, 2))) * Poly(Rat(4))).primitive_integer().to_string() == "2*a+1");
}

TEST_CASE("polynomial gcd") {
  Poly a = Poly::variable(Var::a);
  Poly x = Poly::variable(Var::x);
  Poly y = Poly::variable(Var::y);
  Poly g = a * x - y + Poly(3);
  Poly f1 = g * (a + x * x) * (y - Poly(1));
  Poly f2 = g * (a * a - y) * (y - Poly(1));
  CHECK(gcd(f1, f2) == (g * (y - Poly(1))).primitive_integer());
  CHECK(gcd(a + Poly(1), a - Poly(1)) == Poly(1));
  CHECK(gcd(Poly(), a * Poly(Rat(3))) == a);
}

TEST_CASE("add and inverse") {
  CHECK(P("x") + P("y") == P("x+y"));
  RatF f = P("(a+1/2)/(2*a+3)");
  CHECK(f * (RatF(1) / f) == RatF(1));
  CHECK((P("a") - P("a")).is_zero());
  CHECK(ratf_is_zero(RatF()));
  CHECK_THROWS_AS(f / RatF(), DivisionByZero);
}

TEST_CASE("normal form of a Table 1 ratio") {
  RatF built = P("(2*a+1/2)") * P("(2*a+3/2)") / P("(a+1/2)^2") * RatF(Rat(6561, 12500));
  RatF parsed = P("3^8/(2^2*5^5)*poch(2*a+1/2,2)/(a+1/2)^2");
  CHECK(built == parsed);
  CHECK(built.den().to_string() == "4*a^2+4*a+1");
  CHECK(built.to_string() == "(26244/3125*a^2+26244/3125*a+19683/12500)/(4*a^2+4*a+1)");
}

TEST_CASE("evaluation") {
  RatF r = P("6561*(2*a+1/2)*(2*a+3/2)/(12500*(a+1/2)^2)");
  CHECK(r.evaluate(at_a(0)) == Rat(19683, 12500));
  CHECK(RatF(1).evaluate(Assignment{}) == 1);
  CHECK_THROWS_AS(P("1/(a+1/2)").evaluate(at_a(Rat(-1, 2))), DivisionByZero);
  CHECK_THROWS_AS(P("a+x").evaluate(at_a(1)), DomainError);
}

TEST_CASE("shift") {
  CHECK(ratf_shift(P("a"), Var::a, P("a+1").num()) == P("a+1"));
  CHECK(ratf_shift(P("x"), Var::a, P("a+n").num()) == P("x"));
  RatF q00 = P("3^8/(2^2*5^5)*poch(2*a+1/2,2)/(a+1/2)^2");
  RatF shifted = ratf_shift(q00, Var::a, P("a+n").num());
  CHECK(shifted == P("3^8/(2^2*5^5)*(2*a+2*n+1/2)*(2*a+2*n+3/2)/(a+n+1/2)^2"));
}

TEST_CASE("symbolic Pochhammer") {
  CHECK(pochhammer_symbolic(P("a").num(), 0) == RatF(1));
  CHECK(pochhammer_symbolic(P("2*a+1/2").num(), 2) == P("(2*a+1/2)*(2*a+3/2)"));
  CHECK(pochhammer_symbolic(Poly(Rat(1, 2)), 2) == RatF(Rat(3, 4)));
}

TEST_CASE("parser errors") {
  CHECK_THROWS_AS(parse_ratf("a+"), ParseError);
  CHECK_THROWS_AS(parse_ratf("foo"), ParseError);
  CHECK_THROWS_AS(parse_ratf("1/(a-a)"), ParseError);
  CHECK(parse_ratf("-(a)^-1") == RatF(-1) / P("a"));
}
