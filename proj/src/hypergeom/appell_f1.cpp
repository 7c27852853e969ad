#include <algorithm>
#include <cmath>

#include "appell/errors.hpp"
#include "appell/gamma.hpp"
#include "appell/hypergeom.hpp"

namespace appell {

namespace {

constexpr long kGuardBits = 32;
constexpr long kMaxOuterTerms = 1'000'000;

Rat rabs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

Mpfr pow10_neg(long digits) {
  Mpfr t(64);
  mpfr_ui_pow_ui(t.get(), 10, static_cast<unsigned long>(digits), MPFR_RNDU);
  mpfr_ui_div(t.get(), 1, t.get(), MPFR_RNDD);
  return t;
}

Mpfr up(const Rat& q) {
  Mpfr r(64);
  mpfr_set_q(r.get(), q.get_mpq_t(), MPFR_RNDU);
  return r;
}

// (beta1, x) <-> (beta2, y)
void swap_vars(ParamsF1& p, Rat& x, Rat& y) {
  std::swap(p.beta1, p.beta2);
  std::swap(x, y);
}

std::optional<EvalResult> trivial_cases(const ParamsF1& p, const Rat& x, const Rat& y, const PrecCtx& ctx) {
  if (p.alpha == 0 || (p.beta1 == 0 && p.beta2 == 0) || (x == 0 && y == 0))
    return EvalResult{Real::from_long(1, ctx.working_bits + kGuardBits), 1, Method::series};
  if (y == 0 || p.beta2 == 0) return eval_2f1({p.alpha, p.beta1, p.gamma}, x, ctx);
  if (x == 0 || p.beta1 == 0) return eval_2f1({p.alpha, p.beta2, p.gamma}, y, ctx);
  return std::nullopt;
}

bool terminating_applicable(const ParamsF1& p, const Rat& x, const Rat& y) {
  if (is_nonpositive_integer(p.beta2) && (rabs(x) < 1 || is_nonpositive_integer(p.beta1))) return true;
  if (is_nonpositive_integer(p.beta1) && (rabs(y) < 1 || is_nonpositive_integer(p.beta2))) return true;
  return false;
}

bool integral_applicable(const ParamsF1& p, const Rat& x, const Rat& y) {
  if (!(p.alpha > 0 && p.gamma > p.alpha)) return false;
  // (1 - w t) vanishes in [0, 1] iff w >= 1; fine only for nonnegative integer powers.
  for (auto [w, b] : {std::pair{x, p.beta1}, std::pair{y, p.beta2}})
    if (w >= 1 && !is_nonpositive_integer(b)) return false;
  return true;
}

// G_n = 2F1(a+n, b; c+n; x) for x in (9/10, 1) via the connection at w = 1 - x:
// G_n = A_n 2F1(a+n, b; 1-e; w) + B_n w^e 2F1(c-a, c+n-b; 1+e; w), e = c-a-b,
// with A_{n+1}/A_n = (c+n)/(c+n-b) and B_{n+1}/B_n = (c+n)/(a+n).
class InnerConnection {
 public:
  InnerConnection(const Params2F1& p, const Rat& x, const PrecCtx& ctx)
      : p_(p), w_(1 - x), e_(p.c - p.a - p.b), ctx_(ctx) {
    const long wp = ctx.working_bits;
    wpow_ = pow_rat(Real::from_rat(w_, wp), e_);
    coefficients(0);
  }

  Real value(long n) {
    if (n != n_) coefficients(n);
    const PrecCtx inner = ctx_;
    EvalResult u = eval_2f1_series({p_.a + n, p_.b, 1 - e_}, w_, inner);
    EvalResult v = eval_2f1_series({p_.c - p_.a, p_.c + n - p_.b, 1 + e_}, w_, inner);
    Real g = a_ * u.value + b_ * wpow_ * v.value;
    // Advance to n + 1.
    const Rat cn = p_.c + n, dn = p_.c + n - p_.b, an = p_.a + n;
    if (dn == 0 || an == 0 || a_exact_zero_ || b_exact_zero_) {
      coefficients(n + 1);
    } else {
      a_ = a_.mul_rat(cn / dn);
      b_ = b_.mul_rat(cn / an);
      n_ = n + 1;
    }
    terms_ += u.terms_used + v.terms_used;
    return g;
  }

  long terms() const { return terms_; }

 private:
  void coefficients(long n) {
    PrecCtx g = ctx_.with_bits(ctx_.working_bits + 16);
    Real gc = gamma_rat(p_.c + n, g);
    a_ = gc * gamma_rat(e_, g) * rgamma_rat(p_.c - p_.a, g) * rgamma_rat(p_.c + n - p_.b, g);
    b_ = gc * gamma_rat(-e_, g) * rgamma_rat(p_.a + n, g) * rgamma_rat(p_.b, g);
    a_exact_zero_ = is_nonpositive_integer(p_.c - p_.a) || is_nonpositive_integer(p_.c + n - p_.b);
    b_exact_zero_ = is_nonpositive_integer(p_.a + n) || is_nonpositive_integer(p_.b);
    n_ = n;
  }

  Params2F1 p_;
  Rat w_, e_;
  PrecCtx ctx_;
  Real wpow_, a_, b_;
  bool a_exact_zero_ = false, b_exact_zero_ = false;
  long n_ = 0;
  long terms_ = 0;
};

}  // namespace

Params2F1 f1_reduce_beta_zero(const ParamsF1& p) {
  if (p.beta2 != 0) throw DomainError("reduction needs beta2 = 0");
  return {p.alpha, p.beta1, p.gamma};
}

EvalResult eval_f1_double_series(const ParamsF1& p0, const Rat& x0, const Rat& y0, const PrecCtx& ctx) {
  if (is_nonpositive_integer(p0.gamma)) throw DomainError("F1: gamma is a nonpositive integer");
  if (rabs(x0) >= 1 || rabs(y0) >= 1) throw DomainError("F1 double series needs |x| < 1 and |y| < 1");
  if (auto t = trivial_cases(p0, x0, y0, ctx)) {
    t->method = Method::double_series;
    return *t;
  }
  ParamsF1 p = p0;
  Rat x = x0, y = y0;
  if (rabs(y) > rabs(x)) swap_vars(p, x, y);

  const long wp = ctx.working_bits + kGuardBits;
  const Mpfr tol = pow10_neg(ctx.target_digits + 5);
  const Rat ax = rabs(x), ay = rabs(y);
  const Rat amg = rabs(p.alpha - p.gamma);
  const Rat b2m1 = rabs(p.beta2 - 1);
  const Rat ab1 = rabs(p.beta1);

  // Outer sum over n of c_n G_n with c_n = (al)_n (b2)_n / ((g)_n n!) y^n and
  // G_n = 2F1(al+n, b1; g+n; x).
  Real sum = Real::from_long(0, wp);
  Real c = Real::from_long(1, wp);
  long terms = 0;
  // Near |x| = 1 the inner series is slow; the connection route is not.
  std::optional<InnerConnection> connection;
  if (x > Rat(9, 10) && !is_integer(p.gamma - p.alpha - p.beta1))
    connection.emplace(Params2F1{p.alpha, p.beta1, p.gamma}, x, PrecCtx{wp, ctx.target_digits + 5});
  Mpfr tmp(64);
  for (long n = 0;; ++n) {
    if (c.is_exact() && mpfr_zero_p(c.mid().get())) break;
    // Inner tolerance tol / (4 |c_n| (n+1)^2) sums to below tol / 2.
    Mpfr cmag = c.mag_upper();
    Mpfr inner_tol = tol;
    mpfr_div(inner_tol.get(), inner_tol.get(), cmag.get(), MPFR_RNDD);
    mpfr_div_d(inner_tol.get(), inner_tol.get(), 4.0 * static_cast<double>(n + 1) * static_cast<double>(n + 1),
               MPFR_RNDD);
    long inner_bits = wp;
    if (!mpfr_zero_p(cmag.get())) inner_bits = std::clamp(wp + static_cast<long>(mpfr_get_exp(cmag.get())) + 8, 64L, wp);
    const Params2F1 inner{p.alpha + n, p.beta1, p.gamma + n};
    EvalResult g;
    if (connection) {
      g = {connection->value(n), 0, Method::connection};
    } else {
      g = eval_2f1_series(inner, x, ctx.with_bits(inner_bits), inner_tol);
    }
    terms += g.terms_used;
    sum = sum + c * g.value.with_prec(wp);

    Rat an = p.alpha + n, bn = p.beta2 + n, gn = p.gamma + n;
    c = c * Real::from_rat(an * bn * y / (gn * (n + 1)), wp);
    const long N = n + 1;
    ++terms;
    if (N > kMaxOuterTerms) throw PrecisionExhausted("F1 double series: term limit exceeded");
    Rat gN = p.gamma + N;
    if (gN <= 0 || N % 4 != 0) continue;
    Rat delta = amg / gN;
    Rat xr = ax * (1 + delta);
    if (xr >= 1) continue;
    Rat rho = ay * (1 + delta) * (1 + b2m1 / (N + 1));
    if (rho >= 1) continue;
    // |G_n| <= (1 - |x|(1+delta))^(-|b1|) for n >= N.
    Real bg = pow_rat(Real::from_rat(1 - xr, 64), -ab1);
    Mpfr tail = c.mag_upper();
    Mpfr bgu = bg.mag_upper();
    mpfr_mul(tail.get(), tail.get(), bgu.get(), MPFR_RNDU);
    Mpfr inv = up(1 / (1 - rho));
    mpfr_mul(tail.get(), tail.get(), inv.get(), MPFR_RNDU);
    Mpfr lim = tol;
    mpfr_div_ui(lim.get(), lim.get(), 2, MPFR_RNDD);
    mpfr_abs(tmp.get(), sum.mid().get(), MPFR_RNDD);
    if (mpfr_cmp_ui(tmp.get(), 1) > 0) mpfr_mul(lim.get(), lim.get(), tmp.get(), MPFR_RNDD);
    if (mpfr_lessequal_p(tail.get(), lim.get())) {
      sum.add_error(tail);
      break;
    }
  }
  if (connection) terms += connection->terms();
  return {sum, terms, Method::double_series};
}

EvalResult eval_f1_terminating(const ParamsF1& p0, const Rat& x0, const Rat& y0, const PrecCtx& ctx) {
  if (is_nonpositive_integer(p0.gamma)) throw DomainError("F1: gamma is a nonpositive integer");
  ParamsF1 p = p0;
  Rat x = x0, y = y0;
  if (!(is_nonpositive_integer(p.beta2) && (rabs(x) < 1 || is_nonpositive_integer(p.beta1)))) {
    if (is_nonpositive_integer(p.beta1) && (rabs(y) < 1 || is_nonpositive_integer(p.beta2))) {
      swap_vars(p, x, y);
    } else {
      throw DomainError("F1 terminating reduction needs beta2 (or beta1) a nonpositive integer with the other argument in (-1, 1)");
    }
  }
  const long nmax = -p.beta2.get_num().get_si();

  // Exact outer coefficients (al)_n (b2)_n / ((g)_n n!) y^n.
  std::vector<Rat> coeff(static_cast<std::size_t>(nmax + 1));
  coeff[0] = 1;
  for (long n = 0; n < nmax; ++n)
    coeff[static_cast<std::size_t>(n + 1)] =
        coeff[static_cast<std::size_t>(n)] * (p.alpha + n) * (p.beta2 + n) * y / ((p.gamma + n) * (n + 1));

  PrecCtx cur = ctx.with_bits(ctx.working_bits + kGuardBits);
  EvalResult out;
  for (int attempt = 0; attempt < 10; ++attempt) {
    const long wp = cur.working_bits;
    Real sum = Real::from_long(0, wp);
    long terms = 0;
    for (long n = 0; n <= nmax; ++n) {
      const Rat& cn = coeff[static_cast<std::size_t>(n)];
      if (cn == 0) continue;
      EvalResult g = eval_2f1({p.alpha + n, p.beta1, p.gamma + n}, x, cur);
      terms += g.terms_used + 1;
      sum = sum + Real::from_rat(cn, wp) * g.value;
    }
    out = {sum, terms, Method::terminating};
    if (sum.radius_ok(ctx.target_digits)) return out;
    // Widen by the observed loss plus a margin.
    long lost = static_cast<long>(mpfr_get_exp(sum.rad().get())) + static_cast<long>(
                    std::ceil(static_cast<double>(ctx.target_digits) * std::log2(10.0)));
    long more = std::max(lost, wp / 2) + 32;
    cur = {wp + more, cur.target_digits + static_cast<long>(std::ceil(static_cast<double>(more) * std::log10(2.0)))};
  }
  return out;
}

EvalResult eval_f1(const ParamsF1& p, const Rat& x, const Rat& y, const PrecCtx& ctx, F1Method method) {
  switch (method) {
    case F1Method::series:
      return eval_f1_double_series(p, x, y, ctx);
    case F1Method::terminating:
      return eval_f1_terminating(p, x, y, ctx);
    case F1Method::integral:
      return eval_f1_integral(p, x, y, ctx);
    case F1Method::automatic:
      break;
  }
  if (is_nonpositive_integer(p.gamma)) throw DomainError("F1: gamma is a nonpositive integer");
  if (terminating_applicable(p, x, y)) return eval_f1_terminating(p, x, y, ctx);
  if (rabs(x) < 1 && rabs(y) < 1) return eval_f1_double_series(p, x, y, ctx);
  if (integral_applicable(p, x, y)) return eval_f1_integral(p, x, y, ctx);
  throw DomainError("F1: no evaluation route (terminating, double series, Euler integral) applies");
}

bool f1_evaluable(const ParamsF1& p, const Rat& x, const Rat& y) {
  if (is_nonpositive_integer(p.gamma)) return false;
  return terminating_applicable(p, x, y) || (rabs(x) < 1 && rabs(y) < 1) || integral_applicable(p, x, y);
}

}  // namespace appell
