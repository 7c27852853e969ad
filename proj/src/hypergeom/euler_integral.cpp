#include "appell/euler_integral.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "appell/errors.hpp"
#include "appell/gamma.hpp"
#include "appell/hypergeom.hpp"

namespace appell {

namespace {

Rat rabs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

bool is_polynomial(const LinearFactor& f) { return f.b1 == 0 || is_nonnegative_integer(f.e); }

// Largest power of two not exceeding q > 0.
Rat dyadic_floor(const Rat& q) {
  long e = static_cast<long>(std::floor(std::log2(q.get_d())));
  Rat d = e >= 0 ? Rat(Int(1) << static_cast<unsigned long>(e)) : Rat(1, Int(1) << static_cast<unsigned long>(-e));
  while (d > q) d /= 2;
  return d;
}

// Taylor coefficients of prod (B0 + B1 s)^e up to degree K - 1.
std::vector<Real> product_series(const std::vector<LinearFactor>& fs, long K, long wp) {
  std::vector<Real> acc(static_cast<std::size_t>(K), Real::from_long(0, wp));
  acc[0] = Real::from_long(1, wp);
  long acc_deg = 0;  // highest possibly nonzero index in acc
  for (const auto& f : fs) {
    std::vector<Real> c(static_cast<std::size_t>(K), Real::from_long(0, wp));
    long deg = K - 1;
    if (f.b1 == 0 || f.e == 0) {
      c[0] = pow_rat(Real::from_rat(f.b0, wp), f.e);
      deg = 0;
    } else if (f.b0 == 0) {
      // (B1 s)^e with e a nonnegative integer.
      long e = f.e.get_num().get_si();
      if (e < K) c[static_cast<std::size_t>(e)] = pow_rat(Real::from_rat(f.b1, wp), f.e);
      deg = std::min(e, K - 1);
    } else {
      c[0] = pow_rat(Real::from_rat(f.b0, wp), f.e);
      Rat ratio = f.b1 / f.b0;
      bool poly = is_nonnegative_integer(f.e);
      long top = poly ? std::min(f.e.get_num().get_si(), K - 1) : K - 1;
      for (long k = 0; k < top; ++k)
        c[static_cast<std::size_t>(k + 1)] = c[static_cast<std::size_t>(k)].mul_rat((f.e - k) * ratio / (k + 1));
      deg = top;
    }
    std::vector<Real> out(static_cast<std::size_t>(K), Real::from_long(0, wp));
    for (long i = 0; i <= acc_deg; ++i)
      for (long j = 0; j <= deg && i + j < K; ++j)
        out[static_cast<std::size_t>(i + j)] += acc[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(j)];
    acc = std::move(out);
    acc_deg = std::min(acc_deg + deg, K - 1);
  }
  return acc;
}

// Upper bound of |prod (B0 + B1 s)^e| on |s| = r.
Mpfr majorant(const std::vector<LinearFactor>& fs, const Rat& r) {
  Real m = Real::from_long(1, 64);
  for (const auto& f : fs) {
    if (f.e == 0) continue;
    Rat spread = rabs(f.b1) * r;
    if (is_polynomial(f)) {
      m = m * pow_rat(Real::from_rat(rabs(f.b0) + spread, 64), f.e);
    } else {
      Rat lo = f.b0 - spread;
      if (f.b0 <= 0 || lo <= 0) throw Error("internal: expansion radius reaches a singularity");
      m = m * pow_rat(Real::from_rat(f.e > 0 ? f.b0 + spread : lo, 64), f.e);
    }
  }
  return m.mag_upper();
}

// Factors re-centred at t = c: (b0 + b1 (c + s))^e.
std::vector<LinearFactor> recentre(const std::vector<LinearFactor>& fs, const Rat& c, const Rat& sign) {
  std::vector<LinearFactor> out;
  for (const auto& f : fs) out.push_back({f.b0 + f.b1 * c, f.b1 * sign, f.e});
  return out;
}

long terms_for(long wp, const Rat& ratio_inv) {
  // (h/r)^K <= 2^-(wp+8)
  double l = std::log2(ratio_inv.get_d());
  return static_cast<long>(std::ceil(static_cast<double>(wp + 8) / l)) + 1;
}

// int_0^d u^p prod (B0 + B1 u)^e du, series about u = 0 with radius r = 3d.
Real endpoint_piece(const Rat& p, const std::vector<LinearFactor>& fs, const Rat& d, long wp, QuadratureStats& st) {
  const Rat r = 3 * d;
  const long K = terms_for(wp, Rat(3));
  std::vector<Real> c = product_series(fs, K, wp);
  Real dpow = pow_rat(Real::from_rat(d, wp), p + 1);  // d^(p+k+1) for k = 0
  Real dr = Real::from_rat(d, wp);
  Real sum = Real::from_long(0, wp);
  for (long k = 0; k < K; ++k) {
    sum += (c[static_cast<std::size_t>(k)] * dpow) / Real::from_rat(p + k + 1, wp);
    dpow *= dr;
  }
  // Tail: M(r) d^(p+1) (d/r)^K / ((p+K+1)(1 - d/r)).
  Real tail = pow_rat(Real::from_rat(d, 64), p + 1) * pow_int(Real::from_rat(Rat(1, 3), 64), K);
  tail = tail * Real::from_rat(Rat(3, 2) / (p + K + 1), 64);
  Mpfr m = majorant(fs, r);
  Mpfr t = tail.mag_upper();
  mpfr_mul(t.get(), t.get(), m.get(), MPFR_RNDU);
  sum.add_error(t);
  ++st.pieces;
  st.max_terms = std::max(st.max_terms, K);
  return sum;
}

// int_{-h}^{h} prod (B0 + B1 s)^e ds with radius r = 3h.
Real interior_piece(const std::vector<LinearFactor>& fs, const Rat& h, long wp, QuadratureStats& st) {
  const Rat r = 3 * h;
  const long K = terms_for(wp, Rat(3));
  std::vector<Real> c = product_series(fs, K, wp);
  Real hr = Real::from_rat(h, wp);
  Real h2 = hr * hr;
  Real hpow = hr;  // h^(k+1)
  Real sum = Real::from_long(0, wp);
  for (long k = 0; k < K; k += 2) {
    sum += (c[static_cast<std::size_t>(k)] * hpow).mul_si(2).div_si(k + 1);
    hpow *= h2;
  }
  // Tail: 2h M(r) (h/r)^K / ((K+1)(1 - h/r)).
  Real tail = Real::from_rat(2 * h * Rat(3, 2) / (K + 1), 64) * pow_int(Real::from_rat(Rat(1, 3), 64), K);
  Mpfr m = majorant(fs, r);
  Mpfr t = tail.mag_upper();
  mpfr_mul(t.get(), t.get(), m.get(), MPFR_RNDU);
  sum.add_error(t);
  ++st.pieces;
  st.max_terms = std::max(st.max_terms, K);
  return sum;
}

Rat distance_to(const std::vector<Rat>& pts, const Rat& t, std::optional<Rat> skip = std::nullopt) {
  std::optional<Rat> best;
  for (const Rat& s : pts) {
    if (skip && s == *skip) continue;
    Rat d = rabs(t - s);
    if (!best || d < *best) best = d;
  }
  return best ? *best : Rat(1000);
}

Real integrate_once(const EulerIntegrand& f, long wp, QuadratureStats& st) {
  std::vector<Rat> sing;
  if (!is_nonnegative_integer(f.p)) sing.push_back(0);
  if (!is_nonnegative_integer(f.q)) sing.push_back(1);
  for (const auto& lf : f.factors) {
    if (is_polynomial(lf)) continue;
    Rat root = -lf.b0 / lf.b1;
    if (root >= 0 && root <= 1) throw DomainError("Euler integrand has a non-integrable or branch singularity in [0, 1]");
    sing.push_back(root);
  }

  Rat d0 = std::min(Rat(1, 2), Rat(distance_to(sing, 0, Rat(0)) / 4));
  Rat d1 = std::min(Rat(1, 2), Rat(distance_to(sing, 1, Rat(1)) / 4));
  d0 = dyadic_floor(d0);
  d1 = dyadic_floor(d1);
  if (d0 + d1 > 1) d1 = 1 - d0;

  Real total = Real::from_long(0, wp);
  // Left end: t^p times the remaining factors (including (1 - t)^q) about t = 0.
  {
    std::vector<LinearFactor> fs = f.factors;
    fs.push_back({1, -1, f.q});
    total += endpoint_piece(f.p, fs, d0, wp, st);
  }
  // Right end in u = 1 - t: u^q times t^p = (1 - u)^p and b0 + b1 (1 - u).
  if (d1 > 0) {
    std::vector<LinearFactor> fs = recentre(f.factors, Rat(1), Rat(-1));
    fs.push_back({1, -1, f.p});
    total += endpoint_piece(f.q, fs, d1, wp, st);
  }
  // Interior [d0, 1 - d1].
  std::vector<LinearFactor> all = f.factors;
  all.push_back({0, 1, f.p});
  all.push_back({1, -1, f.q});
  Rat left = d0;
  const Rat right = 1 - d1;
  while (left < right) {
    Rat h = dyadic_floor(distance_to(sing, left) / 5);
    if (2 * h >= right - left) h = (right - left) / 2;
    Rat centre = left + h;
    total += interior_piece(recentre(all, centre, Rat(1)), h, wp, st);
    left += 2 * h;
  }
  return total;
}

// rad <= 10^-digits |x|, or absolute when the ball contains 0.
bool relative_ok(const Real& x, long digits) {
  if (x.contains_zero()) return x.radius_ok(digits);
  Mpfr lim = x.mag_lower();
  Mpfr ten(64);
  mpfr_ui_pow_ui(ten.get(), 10, static_cast<unsigned long>(digits), MPFR_RNDU);
  mpfr_div(lim.get(), lim.get(), ten.get(), MPFR_RNDD);
  return mpfr_lessequal_p(x.rad().get(), lim.get()) != 0;
}

}  // namespace

Real integrate_euler(const EulerIntegrand& f, const PrecCtx& ctx, QuadratureStats* stats) {
  if (f.p <= -1 || f.q <= -1) throw DomainError("Euler integral diverges at an endpoint (exponent <= -1)");
  long wp = ctx.working_bits + 32;
  Real result(wp);
  QuadratureStats st;
  for (int attempt = 0; attempt < 6; ++attempt) {
    st = QuadratureStats{};
    result = integrate_once(f, wp, st);
    st.bits = wp;
    if (relative_ok(result, ctx.target_digits)) break;
    // Raise by the observed shortfall.
    Mpfr mag = result.mag_lower();
    long shortfall = 64;
    if (!mpfr_zero_p(mag.get())) {
      long have = static_cast<long>(mpfr_get_exp(result.rad().get()));
      long want = static_cast<long>(mpfr_get_exp(mag.get())) -
                  static_cast<long>(std::ceil(static_cast<double>(ctx.target_digits) * std::log2(10.0)));
      shortfall = std::max(have - want + 16, 32L);
    }
    wp += shortfall;
  }
  if (stats) *stats = st;
  return result;
}

EvalResult eval_f1_integral(const ParamsF1& p, const Rat& x, const Rat& y, const PrecCtx& ctx) {
  if (!(p.alpha > 0 && p.gamma > p.alpha)) throw DomainError("Euler integral needs gamma > alpha > 0");
  EulerIntegrand f{p.alpha - 1, p.gamma - p.alpha - 1, {}};
  if (x != 0 && p.beta1 != 0) f.factors.push_back({1, -x, -p.beta1});
  if (y != 0 && p.beta2 != 0) f.factors.push_back({1, -y, -p.beta2});
  PrecCtx inner = ctx.with_bits(ctx.working_bits + 16);
  QuadratureStats st;
  Real integral = integrate_euler(f, inner, &st);
  long wp = std::max(st.bits, inner.working_bits);
  PrecCtx gctx = ctx.with_bits(wp);
  Real pre = gamma_rat(p.gamma, gctx) / (gamma_rat(p.alpha, gctx) * gamma_rat(p.gamma - p.alpha, gctx));
  return {pre * integral, st.pieces, Method::integral};
}

}  // namespace appell
