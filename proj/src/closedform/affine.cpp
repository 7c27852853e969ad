#include "appell/affine.hpp"

#include "appell/poly.hpp"
#include "scanner.hpp"

namespace appell {

Poly Affine::poly() const { return Poly::variable(Var::a) * p + Poly(q); }

std::string Affine::to_string() const {
  std::string s;
  if (p != 0) {
    if (p == -1) {
      s = "-";
    } else if (p != 1) {
      s = appell::to_string(p) + "*";
    }
    s += "a";
    if (q > 0) s += "+" + appell::to_string(q);
    if (q < 0) s += appell::to_string(q);
    return s;
  }
  return appell::to_string(q);
}

Affine parse_affine(std::string_view text) {
  detail::Scanner sc(text);
  Affine a = sc.affine();
  if (!sc.at_end()) sc.fail("unexpected trailing input in affine form");
  return a;
}

}  // namespace appell
