#include "appell/contiguity.hpp"
#include "appell/errors.hpp"
#include "appell/hypergeom.hpp"

namespace appell {

Real numeric_four_term_check(const ContigRel& rel, const ShiftVec& k, const Assignment& point, const PrecCtx& ctx) {
  auto at = [&](Var v) {
    const auto& q = point[static_cast<std::size_t>(v)];
    if (!q) throw DomainError("point does not assign " + std::string(var_name(v)));
    return *q;
  };
  const Rat x = at(Var::x), y = at(Var::y);
  if (abs(x) >= 1 || abs(y) >= 1) throw DomainError("four-term check needs |x| < 1 and |y| < 1");
  const ParamsF1 p{at(Var::a), at(Var::b1), at(Var::b2), at(Var::c)};
  auto f = [&](const ShiftVec& s) {
    ParamsF1 q{p.alpha + s.k, p.beta1 + s.l1, p.beta2 + s.l2, p.gamma + s.m};
    return eval_f1_double_series(q, x, y, ctx).value;
  };
  const long wp = ctx.working_bits;
  Real r = f(k);
  r = r - Real::from_rat(rel.q10.evaluate(point), wp) * f({1, 1, 0, 1});
  r = r - Real::from_rat(rel.q01.evaluate(point), wp) * f({1, 0, 1, 1});
  r = r - Real::from_rat(rel.q00.evaluate(point), wp) * f({});
  return r;
}

}  // namespace appell
