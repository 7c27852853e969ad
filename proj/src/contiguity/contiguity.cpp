// Shift operators on the three-dimensional solution space of the F1 system.
//
// The state at a parameter point p is the vector (F, X, Y) = (F, x F_x, y F_y).
// A unit raising step is a first-order operator L = (c0 + u*tx + v*ty) / s in
// the Euler operators tx = x d/dx, ty = y d/dy. Applying tx and ty to L F and
// reducing second derivatives with the Pfaffian system gives a 3x3 matrix
// over the rational functions. Lowering steps invert the matrix of the
// corresponding raising step taken from the lowered point.

#include <algorithm>

#include "appell/contiguity.hpp"
#include "appell/errors.hpp"

namespace appell {

ShiftVec operator+(const ShiftVec& u, const ShiftVec& v) {
  return {u.k + v.k, u.l1 + v.l1, u.l2 + v.l2, u.m + v.m};
}

ShiftVec parse_shift(std::string_view text) {
  std::array<long, 4> out{};
  std::size_t idx = 0, pos = 0;
  while (true) {
    std::size_t comma = text.find(',', pos);
    std::string part(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    if (idx >= 4) throw ParseError("shift vector has more than four entries", pos);
    try {
      std::size_t used = 0;
      out[idx] = std::stol(part, &used);
      if (part.find_first_not_of(" \t", used) != std::string::npos) throw ParseError("bad integer", pos);
    } catch (const std::logic_error&) {
      throw ParseError("bad integer '" + part + "'", pos);
    }
    ++idx;
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (idx != 4) throw ParseError("shift vector needs four entries K,L1,L2,M", text.size());
  return {out[0], out[1], out[2], out[3]};
}

std::string to_string(const ShiftVec& s) {
  return "(" + std::to_string(s.k) + "," + std::to_string(s.l1) + "," + std::to_string(s.l2) + "," +
         std::to_string(s.m) + ")";
}

F1Params F1Params::generic() {
  return {RatF::variable(Var::a), RatF::variable(Var::b1), RatF::variable(Var::b2),
          RatF::variable(Var::c), RatF::variable(Var::x),  RatF::variable(Var::y)};
}

F1Params F1Params::shifted(const ShiftVec& s) const {
  return {alpha + RatF(s.k), beta1 + RatF(s.l1), beta2 + RatF(s.l2), gamma + RatF(s.m), x, y};
}

Mat3 operator*(const Mat3& l, const Mat3& r) {
  Mat3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      RatF s;
      for (int k = 0; k < 3; ++k) s += l[i][k] * r[k][j];
      out[i][j] = s;
    }
  return out;
}

namespace {

using Row = std::array<RatF, 3>;

// Second-order Euler derivatives expressed in the basis (F, X, Y).
struct Pfaffian {
  Row txx, txy, tyy;
};

Pfaffian pfaffian(const F1Params& p) {
  const RatF& al = p.alpha;
  const RatF& b1 = p.beta1;
  const RatF& b2 = p.beta2;
  const RatF& g = p.gamma;
  const RatF& x = p.x;
  const RatF& y = p.y;
  RatF xy = x - y;
  if (xy.is_zero()) throw DivisionByZero("x = y: the F1 system degenerates");
  Pfaffian out;
  out.txy = {RatF(), b2 * y / xy, -(b1 * x) / xy};
  RatF dx = x - RatF(1);
  RatF dy = y - RatF(1);
  if (dx.is_zero() || dy.is_zero()) throw DivisionByZero("x = 1 or y = 1: the F1 system degenerates");
  RatF gm1 = g - RatF(1);
  Row ax = {-(x * al * b1) / dx, (gm1 - x * (al + b1)) / dx, -(x * b1) / dx};
  Row ay = {-(y * al * b2) / dy, -(y * b2) / dy, (gm1 - y * (al + b2)) / dy};
  for (int i = 0; i < 3; ++i) {
    out.txx[i] = ax[i] - out.txy[i];
    out.tyy[i] = ay[i] - out.txy[i];
  }
  return out;
}

// Raising step along `axis` from p (gamma steps go down: gamma -> gamma - 1).
Mat3 raise_matrix(Axis axis, const F1Params& p) {
  RatF c0, u, v, s;
  switch (axis) {
    case Axis::alpha:
      c0 = p.alpha, u = RatF(1), v = RatF(1), s = p.alpha;
      break;
    case Axis::beta1:
      c0 = p.beta1, u = RatF(1), v = RatF(), s = p.beta1;
      break;
    case Axis::beta2:
      c0 = p.beta2, u = RatF(), v = RatF(1), s = p.beta2;
      break;
    case Axis::gamma:
      c0 = p.gamma - RatF(1), u = RatF(1), v = RatF(1), s = p.gamma - RatF(1);
      break;
  }
  if (s.is_zero()) throw DivisionByZero("shift operator has a vanishing normalizer");
  Pfaffian pf = pfaffian(p);
  RatF inv = RatF(1) / s;
  Mat3 m;
  m[0] = {c0 * inv, u * inv, v * inv};
  for (int i = 0; i < 3; ++i) {
    RatF base1 = i == 1 ? c0 : RatF();
    RatF base2 = i == 2 ? c0 : RatF();
    m[1][i] = (base1 + u * pf.txx[i] + v * pf.txy[i]) * inv;
    m[2][i] = (base2 + u * pf.txy[i] + v * pf.tyy[i]) * inv;
  }
  return m;
}

Mat3 inverse(const Mat3& m) {
  Mat3 adj;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      adj[i][j] = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    }
  RatF det = m[0][0] * adj[0][0] + m[0][1] * adj[1][0] + m[0][2] * adj[2][0];
  if (det.is_zero()) throw DivisionByZero("shift operator is singular");
  RatF inv = RatF(1) / det;
  for (auto& row : adj)
    for (auto& e : row) e *= inv;
  return adj;
}

ShiftVec unit(Axis axis, long sign) {
  switch (axis) {
    case Axis::alpha:
      return {sign, 0, 0, 0};
    case Axis::beta1:
      return {0, sign, 0, 0};
    case Axis::beta2:
      return {0, 0, sign, 0};
    case Axis::gamma:
      return {0, 0, 0, sign};
  }
  return {};
}

long component(const ShiftVec& k, Axis axis) {
  switch (axis) {
    case Axis::alpha:
      return k.k;
    case Axis::beta1:
      return k.l1;
    case Axis::beta2:
      return k.l2;
    case Axis::gamma:
      return k.m;
  }
  return 0;
}

// Matrix carrying the state at `from` to the state at from + sign * e_axis.
Mat3 step_matrix(Axis axis, long sign, const F1Params& from) {
  // The gamma operator lowers gamma, so its natural direction is -1.
  long natural = axis == Axis::gamma ? -1 : 1;
  if (sign == natural) return raise_matrix(axis, from);
  return inverse(raise_matrix(axis, from.shifted(unit(axis, sign))));
}

struct Step {
  Axis axis;
  long sign;
  F1Params from;
};

std::vector<Step> path(const ShiftVec& k, const F1Params& base, const AxisOrder& order) {
  std::vector<Step> steps;
  F1Params cur = base;
  for (Axis axis : order) {
    long n = component(k, axis);
    long sign = n >= 0 ? 1 : -1;
    for (long i = 0; i < std::abs(n); ++i) {
      steps.push_back({axis, sign, cur});
      cur = cur.shifted(unit(axis, sign));
    }
  }
  return steps;
}

std::vector<AxisOrder> orders_from(const AxisOrder& first) {
  std::vector<AxisOrder> out{first};
  AxisOrder perm = kDefaultOrder;
  std::sort(perm.begin(), perm.end());
  do {
    if (perm != first) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace

Mat3 transfer_matrix(const ShiftVec& k, const F1Params& base, const AxisOrder& order) {
  Mat3 t;
  for (int i = 0; i < 3; ++i) t[i][i] = RatF(1);
  for (const Step& s : path(k, base, order)) t = step_matrix(s.axis, s.sign, s.from) * t;
  return t;
}

ContigRel relation_from_row(const std::array<RatF, 3>& row, const F1Params& base) {
  // x F_x = x alpha beta1 / gamma * F(p + e10), and likewise for y.
  const F1Params& p = base;
  if (p.gamma.is_zero()) throw DivisionByZero("gamma = 0");
  return {row[1] * p.x * p.alpha * p.beta1 / p.gamma, row[2] * p.y * p.alpha * p.beta2 / p.gamma, row[0]};
}

ContigRel derive_contiguity(const ShiftVec& k, const F1Params& base, const AxisOrder& order) {
  std::string last_error;
  for (const AxisOrder& ord : orders_from(order)) {
    try {
      // Row vector e1 pulled back through the steps from the target to the base.
      std::vector<Step> steps = path(k, base, ord);
      Row r{RatF(1), RatF(), RatF()};
      for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        Mat3 m = step_matrix(it->axis, it->sign, it->from);
        Row next;
        for (int j = 0; j < 3; ++j) {
          RatF s;
          for (int i = 0; i < 3; ++i)
            if (!r[i].is_zero()) s += r[i] * m[i][j];
          next[j] = s;
        }
        r = next;
      }
      return relation_from_row(r, base);
    } catch (const DivisionByZero& e) {
      last_error = e.what();
    }
  }
  throw DivisionByZero("no axis order avoids a degenerate step for k = " + to_string(k) + ": " + last_error);
}

ContigRel specialize(const ContigRel& rel, const F1Params& at) {
  std::array<const RatF*, 6> vals{&at.alpha, &at.beta1, &at.beta2, &at.gamma, &at.x, &at.y};
  bool polynomial = std::all_of(vals.begin(), vals.end(), [](const RatF* v) { return v->den().is_constant(); });
  std::array<std::optional<Poly>, kNumVars> images;
  if (polynomial) {
    for (std::size_t v = 0; v < vals.size(); ++v)
      images[v] = vals[v]->num() * (Rat(1) / vals[v]->den().constant_value());
  }
  auto eval_poly = [&](const Poly& p) {
    if (polynomial) return RatF(p.substitute(images));
    RatF acc;
    for (const auto& t : p.terms()) {
      RatF term(t.coeff);
      for (std::size_t v = 0; v < vals.size(); ++v) {
        unsigned e = t.mono.exponent(static_cast<Var>(v));
        if (e) term *= vals[v]->pow(e);
      }
      acc += term;
    }
    return acc;
  };
  auto sub = [&](const RatF& f) {
    RatF d = eval_poly(f.den());
    if (d.is_zero()) throw DivisionByZero("relation has a pole at the specialization");
    return eval_poly(f.num()) / d;
  };
  return {sub(rel.q10), sub(rel.q01), sub(rel.q00)};
}

std::string to_string(const ContigRel& rel) {
  return "Q10 = " + rel.q10.to_string() + "\nQ01 = " + rel.q01.to_string() + "\nQ00 = " + rel.q00.to_string();
}

}  // namespace appell
