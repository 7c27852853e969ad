#include <cmath>

#include "appell/errors.hpp"
#include "appell/gamma.hpp"
#include "appell/hypergeom.hpp"

namespace appell {

std::string to_string(Method m) {
  switch (m) {
    case Method::series:
      return "series";
    case Method::double_series:
      return "double_series";
    case Method::terminating:
      return "terminating";
    case Method::integral:
      return "integral";
    case Method::gauss:
      return "gauss";
    case Method::connection:
      return "connection";
  }
  return "unknown";
}

namespace {

constexpr long kGuardBits = 32;
constexpr long kMaxTerms = 50'000'000;

Rat rabs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

Mpfr pow10_neg(long digits) {
  Mpfr t(64);
  mpfr_ui_pow_ui(t.get(), 10, static_cast<unsigned long>(digits), MPFR_RNDU);
  mpfr_ui_div(t.get(), 1, t.get(), MPFR_RNDD);
  return t;
}

// Upper bound of a nonnegative rational in a 64-bit float.
Mpfr up(const Rat& q) {
  Mpfr r(64);
  mpfr_set_q(r.get(), q.get_mpq_t(), MPFR_RNDU);
  return r;
}

// Smallest n >= 0 with n0 = -q for a nonpositive integer q, otherwise -1.
long termination_length(const Params2F1& p) {
  long len = -1;
  for (const Rat* v : {&p.a, &p.b}) {
    if (is_nonpositive_integer(*v)) {
      long l = -v->get_num().get_si();
      if (len < 0 || l < len) len = l;
    }
  }
  return len;
}

}  // namespace

EvalResult eval_2f1_series(const Params2F1& p, const Rat& x, const PrecCtx& ctx, const std::optional<Mpfr>& abs_tol) {
  const long len = termination_length(p);
  if (is_nonpositive_integer(p.c) && !(len >= 0 && len <= -p.c.get_num().get_si()))
    throw DomainError("2F1: c is a nonpositive integer");
  if (len < 0 && rabs(x) >= 1) throw DomainError("2F1 series diverges for |x| >= 1");
  const long wp = ctx.working_bits + kGuardBits;
  if (x == 0 || len == 0) return {Real::from_long(1, wp), 1, Method::series};

  // Term ratio (a+n)(b+n) x / ((c+n)(n+1)) with everything scaled to integers.
  const Int pa = p.a.get_num(), qa = p.a.get_den();
  const Int pb = p.b.get_num(), qb = p.b.get_den();
  const Int pc = p.c.get_num(), qc = p.c.get_den();
  const Int px = x.get_num(), qx = x.get_den();
  const Int num_const = qc * px;
  const Int den_const = qa * qb * qx;

  Mpfr t(wp), s(wp), abssum(64), tmp(64);
  mpfr_set_ui(t.get(), 1, MPFR_RNDN);
  mpfr_set_ui(s.get(), 1, MPFR_RNDN);
  mpfr_set_ui(abssum.get(), 1, MPFR_RNDU);

  Mpfr tol = abs_tol ? *abs_tol : pow10_neg(ctx.target_digits + 5);
  const bool relative = !abs_tol;
  const Rat ax = rabs(x);
  const Rat am1 = rabs(p.a - 1);
  const Rat bmc = rabs(p.b - p.c);

  Int num, den;
  Mpfr tail(64);
  bool have_tail = false;
  long n = 0;
  for (;; ++n) {
    if (len >= 0 && n + 1 > len) break;  // next term is exactly zero
    num = (pa + n * qa) * (pb + n * qb) * num_const;
    den = (pc + n * qc) * (n + 1) * den_const;
    mpfr_mul_z(t.get(), t.get(), num.get_mpz_t(), MPFR_RNDN);
    mpfr_div_z(t.get(), t.get(), den.get_mpz_t(), MPFR_RNDN);
    const long N = n + 1;  // t now holds t_N, not yet added

    if (len < 0 && (N % 16 == 0 || N < 16)) {
      Rat cN = p.c + N;
      if (cN > 0) {
        // rho_N = |x| (1 + |a-1|/(N+1)) (1 + |b-c|/(c+N)) bounds every later term ratio.
        Rat rho = ax * (1 + am1 / (N + 1)) * (1 + bmc / cN);
        if (rho < 1) {
          mpfr_abs(tail.get(), t.get(), MPFR_RNDU);
          Mpfr inv = up(1 / (1 - rho));
          mpfr_mul(tail.get(), tail.get(), inv.get(), MPFR_RNDU);
          // Relative rounding error already carried by t_N.
          mpfr_mul_d(tail.get(), tail.get(), 1.0 + 1e-6, MPFR_RNDU);
          Mpfr lim = tol;
          if (relative) {
            mpfr_abs(tmp.get(), s.get(), MPFR_RNDD);
            if (mpfr_cmp_ui(tmp.get(), 1) > 0) mpfr_mul(lim.get(), lim.get(), tmp.get(), MPFR_RNDD);
          }
          if (mpfr_lessequal_p(tail.get(), lim.get())) {
            have_tail = true;
            break;
          }
        }
      }
    }
    if (N > kMaxTerms) throw PrecisionExhausted("2F1 series: term limit exceeded");
    mpfr_add(s.get(), s.get(), t.get(), MPFR_RNDN);
    mpfr_abs(tmp.get(), t.get(), MPFR_RNDU);
    mpfr_add(abssum.get(), abssum.get(), tmp.get(), MPFR_RNDU);
  }

  // Each term carries at most 2N relative roundings; each partial sum one more.
  const long terms = n + 1;
  Mpfr rad(64);
  mpfr_set_ui_2exp(rad.get(), 1, -wp, MPFR_RNDU);
  mpfr_mul_d(rad.get(), rad.get(), 3.1 * static_cast<double>(terms) + 2.0, MPFR_RNDU);
  mpfr_mul(rad.get(), rad.get(), abssum.get(), MPFR_RNDU);
  if (have_tail) mpfr_add(rad.get(), rad.get(), tail.get(), MPFR_RNDU);
  Real value = Real::from_mid_rad(s, rad, wp);
  return {value, terms, len >= 0 ? Method::terminating : Method::series};
}

Real gauss_sum(const Params2F1& p, const PrecCtx& ctx) {
  Rat e = p.c - p.a - p.b;
  if (e <= 0) throw DomainError("Gauss summation needs c - a - b > 0");
  if (is_nonpositive_integer(p.c)) throw DomainError("Gauss summation: Gamma(c) has a pole");
  PrecCtx inner = ctx.with_bits(ctx.working_bits + 16);
  Real r = gamma_rat(p.c, inner) * gamma_rat(e, inner) * rgamma_rat(p.c - p.a, inner) * rgamma_rat(p.c - p.b, inner);
  return r;
}

EvalResult eval_2f1_connection(const Params2F1& p, const Rat& x, const PrecCtx& ctx) {
  const Rat e = p.c - p.a - p.b;
  if (is_integer(e)) throw DomainError("connection formula needs c - a - b not an integer");
  const Rat w = 1 - x;
  if (rabs(w) >= 1) throw DomainError("connection formula needs |1 - x| < 1");
  if (is_nonpositive_integer(p.c)) throw DomainError("2F1: c is a nonpositive integer");
  if (w == 0) return {gauss_sum(p, ctx), 0, Method::gauss};
  if (w < 0) throw DomainError("connection formula: (1 - x)^(c-a-b) needs x < 1");
  PrecCtx inner = ctx.with_bits(ctx.working_bits + 16);
  long wp = inner.working_bits;
  Real gc = gamma_rat(p.c, inner);
  Real c1 = gc * gamma_rat(e, inner) * rgamma_rat(p.c - p.a, inner) * rgamma_rat(p.c - p.b, inner);
  Real c2 = gc * gamma_rat(-e, inner) * rgamma_rat(p.a, inner) * rgamma_rat(p.b, inner);
  EvalResult u2 = eval_2f1_series({p.a, p.b, 1 - e}, w, inner);
  EvalResult u6 = eval_2f1_series({p.c - p.a, p.c - p.b, 1 + e}, w, inner);
  Real value = c1 * u2.value + c2 * pow_rat(Real::from_rat(w, wp), e) * u6.value;
  return {value, u2.terms_used + u6.terms_used, Method::connection};
}

EvalResult eval_2f1(const Params2F1& p, const Rat& x, const PrecCtx& ctx) {
  PrecCtx cur = ctx;
  EvalResult r;
  for (int attempt = 0; attempt < 6; ++attempt) {
    const bool terminating = termination_length(p) >= 0;
    if (x == 1 && !terminating) {
      r = {gauss_sum(p, cur), 0, Method::gauss};
    } else if (terminating) {
      r = eval_2f1_series(p, x, cur);
    } else if (x < Rat(-1, 2)) {
      // Pfaff: F(a,b;c;x) = (1-x)^(-a) F(a, c-b; c; x/(x-1)).
      Rat w = x / (x - 1);
      EvalResult inner = eval_2f1({p.a, p.c - p.b, p.c}, w, cur);
      Real pre = pow_rat(Real::from_rat(1 - x, cur.working_bits + 16), -p.a);
      r = {pre * inner.value, inner.terms_used, inner.method};
    } else if (rabs(x) < Rat(9, 10)) {
      r = eval_2f1_series(p, x, cur);
    } else if (x > 0 && x < 1 && !is_integer(p.c - p.a - p.b)) {
      r = eval_2f1_connection(p, x, cur);
    } else if (x > 0 && x < 1 && p.c - p.a - p.b < 0) {
      // Euler: F(a,b;c;x) = (1-x)^(c-a-b) F(c-a, c-b; c; x), exponent a negative integer here.
      EvalResult inner = eval_2f1_series({p.c - p.a, p.c - p.b, p.c}, x, cur);
      Real pre = pow_rat(Real::from_rat(1 - x, cur.working_bits + 16), p.c - p.a - p.b);
      r = {pre * inner.value, inner.terms_used, Method::series};
    } else if (rabs(x) < 1) {
      r = eval_2f1_series(p, x, cur);
    } else {
      throw DomainError("2F1: argument outside the implemented domain");
    }
    if (r.value.radius_ok(ctx.target_digits)) return r;
    cur = cur.with_bits(cur.working_bits * 2);
  }
  return r;
}

Real Goursat45::prefactor(const Rat& x, const PrecCtx& ctx) const {
  long wp = ctx.working_bits + 16;
  Real f1 = pow_rat(Real::from_rat(1 - x, wp), exponent_1mx);
  Real f2 = pow_rat(Real::from_rat(1 - x / 2, wp), exponent_1mx2);
  return f1 * f2;
}

Goursat45 goursat45_transform(const Params2F1& p, const Rat& x) {
  if (p.c != 2 * p.b) throw DomainError("quadratic transformation needs c = 2b");
  if (x == 2) throw DomainError("quadratic transformation needs x != 2");
  Goursat45 g;
  g.exponent_1mx = p.b - p.a;
  g.exponent_1mx2 = p.a - 2 * p.b;
  g.params = {p.b - p.a / 2, p.b + Rat(1, 2) - p.a / 2, p.b + Rat(1, 2)};
  Rat r = x / (2 - x);
  g.x_new = r * r;
  return g;
}

}  // namespace appell
