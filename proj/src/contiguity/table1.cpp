#include "appell/contiguity.hpp"
#include "appell/errors.hpp"

namespace appell {

F1Params SextupleSpec::params() const {
  return {RatF(alpha.poly()), RatF(beta1.poly()), RatF(beta2.poly()), RatF(gamma.poly()), RatF(x), RatF(y)};
}

namespace {

Affine aff(const char* p, const char* q) { return {parse_rat(p), parse_rat(q)}; }

SextupleSpec row(const char* id, Affine al, Affine b1, Affine b2, Affine g, const char* x, const char* y,
                 ShiftVec k, const char* ratio, bool convergent, std::vector<const char*> samples) {
  SextupleSpec s{id, al, b1, b2, g, parse_rat(x), parse_rat(y), k, parse_ratf(ratio), convergent, {}};
  for (const char* v : samples) s.sample_a.push_back(parse_rat(v));
  return s;
}

std::vector<SextupleSpec> build() {
  std::vector<SextupleSpec> t;
  t.push_back(row("A.1", aff("2", "0"), aff("1", "1/2"), aff("4", "-1"), aff("2", "1/2"), "1/81", "1/6", {2, 1, 4, 2},
                  "3^8/(2^2*5^5)*poch(2*a+1/2,2)/(a+1/2)^2", true, {"1/3", "2/5"}));
  t.push_back(row("A.2", aff("2", "0"), aff("1", "1/2"), aff("4", "-1"), aff("5", "0"), "80/81", "5/6", {2, 1, 4, 5},
                  "3^8/(2^2*5^5)*poch(5*a,5)/((a+1/2)^2*poch(3*a,3))", true, {"1/3", "2/5"}));
  t.push_back(row("A.3", aff("1", "0"), aff("2", "0"), aff("-4", "1"), aff("1", "1/2"), "80/81", "16/15",
                  {1, 2, -4, 1}, "3^4/5^4", false, {"1/4", "1/2"}));
  t.push_back(row("B.1", aff("2", "0"), aff("-3", "1"), aff("4", "-1"), aff("2", "1/2"), "-1/80", "5/32",
                  {2, -3, 4, 2}, "2^6/5^3*poch(2*a+1/2,2)/(a+1/2)^2", true, {"1/3", "2/5"}));
  t.push_back(row("B.2", aff("1", "0"), aff("3", "-1/2"), aff("0", "1/2"), aff("5", "0"), "-25/2", "5/32",
                  {1, 3, 0, 5}, "2^3/5^5*a*poch(5*a,5)/(poch(2*a,2)^2*poch(2*a+1/2,2))", false, {"1/2", "1/3"}));
  t.push_back(row("B.3", aff("2", "0"), aff("-3", "1"), aff("4", "-1"), aff("1", "1/2"), "81/80", "27/32",
                  {2, -3, 4, 1}, "-2^6/5^3", false, {"1/3", "2/3"}));
  t.push_back(row("B.4", aff("0", "1/2"), aff("-1", "0"), aff("3", "5/2"), aff("4", "9/2"), "27/32", "5/6",
                  {0, -1, 3, 4}, "poch(4*a+9/2,4)/(2^6*(a+3/2)^2*poch(2*a+5/2,2))", true, {"1/3", "2/5"}));
  t.push_back(row("C.1", aff("2", "0"), aff("1", "1/2"), aff("5", "-3/2"), aff("3", "0"), "3/128", "3/8",
                  {2, 1, 5, 3}, "2^16/(3^3*5^5)*poch(3*a,3)/((a+1/2)*poch(2*a,2))", true, {"1/3", "2/5"}));
  t.push_back(row("C.2", aff("3", "0"), aff("-1", "1"), aff("5", "-3/2"), aff("2", "1/2"), "3/128", "1/16",
                  {3, -1, 5, 2}, "2^15/5^5*a*poch(2*a+1/2,2)/poch(3*a,3)", true, {"1/3", "2/5"}));
  t.push_back(row("C.3", aff("2", "0"), aff("1", "1/2"), aff("5", "-3/2"), aff("5", "0"), "125/128", "5/8",
                  {2, 1, 5, 5}, "2^18/(3^3*5^5)*a^2*poch(5*a,5)/(poch(2*a,2)^2*poch(3*a,3))", true, {"1/3", "2/5"}));
  t.push_back(row("C.4", aff("1", "0"), aff("-3", "1"), aff("5", "-3/2"), aff("0", "1/2"), "125/128", "25/16",
                  {1, -3, 5, 0}, "2/3^3", false, {"-7/10", "-9/10"}));
  t.push_back(row("D.1", aff("2", "0"), aff("-3", "1"), aff("5", "-3/2"), aff("3", "0"), "-3/125", "9/25",
                  {2, -3, 5, 3}, "2^2*5/3^3*poch(3*a,3)/((a+1/2)*poch(2*a,2))", true, {"1/3", "2/5"}));
  t.push_back(row("D.2", aff("1", "0"), aff("1", "1/2"), aff("3", "-1/2"), aff("-1", "1"), "16/25", "16",
                  {1, 1, 3, -1}, "5^2/3^6", false, {"-5/6", "-7/6"}));
  t.push_back(row("D.3", aff("5", "0"), aff("3", "-1/2"), aff("2", "0"), aff("4", "1/2"), "1/25", "16/25",
                  {5, 3, 2, 4}, "5^10/(2^6*3^6)*a*poch(4*a+1/2,4)/poch(5*a,5)", true, {"1/3", "2/5"}));
  t.push_back(row("E.1", aff("0", "1/2"), aff("2", "0"), aff("3", "-1/2"), aff("3", "1/2"), "1/5", "-4/5",
                  {0, 2, 3, 3}, "(a+1/6)*(a+5/6)/((a+1/3)*(a+2/3))", true, {"1/3", "1/2"}));
  return t;
}

}  // namespace

const std::vector<SextupleSpec>& table1() {
  static const std::vector<SextupleSpec> rows = build();
  return rows;
}

const SextupleSpec* find_sextuple(std::string_view id) {
  for (const auto& s : table1())
    if (s.id == id) return &s;
  return nullptr;
}

ShiftedRel specialize_shift_n(const ContigRel& rel, const SextupleSpec& s) {
  const unsigned only_a = 1u << static_cast<unsigned>(Var::a);
  bool generic = ((rel.q10.variables() | rel.q01.variables() | rel.q00.variables()) & ~only_a) != 0;
  ContigRel at = generic ? specialize(rel, s.params()) : rel;
  // The shift vector equals the a-coefficients, so p + n k is p evaluated at a + n.
  Poly a_plus_n = Poly::variable(Var::a) + Poly::variable(Var::n);
  return {ratf_shift(at.q10, Var::a, a_plus_n), ratf_shift(at.q01, Var::a, a_plus_n),
          ratf_shift(at.q00, Var::a, a_plus_n)};
}

CaseCheck check_case_vanishing(const SextupleSpec& s) {
  ContigRel rel = derive_contiguity(s.shift, s.params());
  CaseCheck out;
  out.shifted = specialize_shift_n(rel, s);
  out.certified = out.shifted.q10n.is_zero() && out.shifted.q01n.is_zero();
  out.ratio = rel.q00;
  out.ratio_matches = out.ratio == s.ratio_expected;
  return out;
}

}  // namespace appell
