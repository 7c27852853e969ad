#include "appell/gamma.hpp"

#include <cmath>
#include <mutex>
#include <vector>

#include "appell/errors.hpp"

namespace appell {

namespace {

std::mutex g_bernoulli_mutex;
std::vector<Rat> g_bernoulli;  // g_bernoulli[n-1] = B_{2n}

// Tangent numbers T_1..T_n (Brent and Harvey), then
// B_{2k} = (-1)^(k-1) 2k T_k / (2^{2k} (2^{2k} - 1)).
void fill_bernoulli(unsigned n) {
  std::vector<Int> t(n + 1);
  t[1] = 1;
  for (unsigned k = 2; k <= n; ++k) t[k] = (k - 1) * t[k - 1];
  for (unsigned k = 2; k <= n; ++k)
    for (unsigned j = k; j <= n; ++j) t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j];
  g_bernoulli.clear();
  for (unsigned k = 1; k <= n; ++k) {
    Int p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, 2 * k);
    Rat b(Int(2 * k) * t[k], p * (p - 1));
    b.canonicalize();
    g_bernoulli.push_back(k % 2 == 1 ? b : Rat(-b));
  }
}

}  // namespace

Rat bernoulli_even(unsigned n) {
  std::lock_guard<std::mutex> lock(g_bernoulli_mutex);
  if (g_bernoulli.size() < n) fill_bernoulli(std::max<unsigned>(n, 2 * static_cast<unsigned>(g_bernoulli.size())));
  return g_bernoulli[n - 1];
}

namespace {

bool meets_pole(const Real& z) {
  Mpfr hi = z.upper();
  if (mpfr_sgn(hi.get()) < 0 || mpfr_zero_p(hi.get()) || mpfr_sgn(z.lower().get()) <= 0) {
    // Nearest integer at or below the upper end.
    Mpfr f(hi.prec());
    mpfr_floor(f.get(), hi.get());
    if (mpfr_sgn(f.get()) > 0) mpfr_set_zero(f.get(), 1);
    Mpfr lo = z.lower();
    return mpfr_lessequal_p(lo.get(), f.get()) != 0;
  }
  return false;
}

// log Gamma(w) for w >= threshold by the Stirling series.
Real stirling_log_gamma(const Real& w, long wp) {
  Real half = Real::from_rat(Rat(1, 2), wp);
  Real two_pi = pi(wp).mul_si(2);
  Real s = (w - half) * log(w) - w + log(two_pi) * half;
  Real w2 = w * w;
  Real wpow = w;  // w^{2k-1}
  double wlo = mpfr_get_d(w.lower().get(), MPFR_RNDD);
  for (unsigned k = 1;; ++k) {
    Rat b = bernoulli_even(k);
    Rat coef = b / Rat(2 * k * (2 * k - 1));
    // Magnitude estimate of the current term; stop when the next one is negligible.
    double lb = static_cast<double>(mpz_sizeinbase(coef.get_num_mpz_t(), 2)) -
                static_cast<double>(mpz_sizeinbase(coef.get_den_mpz_t(), 2)) + 1.0 -
                (2.0 * k - 1.0) * std::log2(wlo);
    if (lb < -static_cast<double>(wp) - 8) {
      // Remainder of the alternating series bounded by this first omitted term.
      Real bound = Real::from_rat(abs(coef), wp) / pow_int(Real::from_mid_rad(w.lower(), Mpfr(64), wp), 2 * k - 1);
      s.add_error(bound.mag_upper());
      return s;
    }
    if (k > 4 * static_cast<unsigned>(wp)) throw PrecisionExhausted("Stirling series did not reach target accuracy");
    s = s + Real::from_rat(coef, wp) / wpow;
    wpow = wpow * w2;
  }
}

Real gamma_positive(const Real& z, long wp) {
  long threshold = wp / 7 + 10;
  double zm = z.mid_double();
  long m = zm >= static_cast<double>(threshold) ? 0 : static_cast<long>(std::ceil(threshold - zm));
  Real w = z + Real::from_long(m, wp);
  Real lg = stirling_log_gamma(w, wp);
  Real g = exp(lg);
  if (m > 0) g = g / pochhammer_num(z, static_cast<unsigned long>(m));
  return g;
}

}  // namespace

Real gamma_real(const Real& z, const PrecCtx& ctx) {
  long wp = ctx.working_bits + 16;
  Real zz = z.with_prec(wp);
  if (meets_pole(zz)) throw DomainError("Gamma pole: argument ball meets a nonpositive integer");
  Real result(wp);
  if (zz.mid_double() < 0.5) {
    // Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
    Real one = Real::from_long(1, wp);
    result = pi(wp) / (sin_pi(zz) * gamma_positive(one - zz, wp));
  } else {
    result = gamma_positive(zz, wp);
  }
  return result.with_prec(ctx.working_bits);
}

Real gamma_rat(const Rat& q, const PrecCtx& ctx) {
  if (is_nonpositive_integer(q)) throw DomainError("Gamma pole at " + to_string(q));
  if (is_integer(q) && q <= 200) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), q.get_num().get_ui() - 1);
    return Real::from_rat(Rat(f), ctx.working_bits);
  }
  long wp = ctx.working_bits + 16;
  Real z = Real::from_rat(q, wp);
  if (q < Rat(1, 2)) {
    Real s = sin_pi(q, wp);
    return (pi(wp) / (s * gamma_positive(Real::from_rat(1 - q, wp), wp))).with_prec(ctx.working_bits);
  }
  return gamma_positive(z, wp).with_prec(ctx.working_bits);
}

Real rgamma_rat(const Rat& q, const PrecCtx& ctx) {
  if (is_nonpositive_integer(q)) return Real::from_long(0, ctx.working_bits);
  return Real::from_long(1, ctx.working_bits) / gamma_rat(q, ctx);
}

}  // namespace appell
