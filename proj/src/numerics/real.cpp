#include "appell/real.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "appell/errors.hpp"

namespace appell {

namespace {

constexpr long kRadPrec = 64;

// One unit in the last place of a nonzero value at its own precision.
void add_ulp_if(Mpfr& rad, const Mpfr& value, int ternary) {
  if (ternary == 0 || mpfr_zero_p(value.get()) || !mpfr_number_p(value.get())) return;
  Mpfr u(kRadPrec);
  mpfr_set_ui_2exp(u.get(), 1, mpfr_get_exp(value.get()) - value.prec(), MPFR_RNDU);
  mpfr_add(rad.get(), rad.get(), u.get(), MPFR_RNDU);
}

Mpfr abs_up(const Mpfr& v) {
  Mpfr r(kRadPrec);
  mpfr_abs(r.get(), v.get(), MPFR_RNDU);
  return r;
}

Mpfr abs_down(const Mpfr& v) {
  Mpfr r(kRadPrec);
  mpfr_abs(r.get(), v.get(), MPFR_RNDD);
  return r;
}

Rat to_rat(const Mpfr& v) {
  Rat q;
  mpfr_get_q(q.get_mpq_t(), v.get());
  return q;
}

void check_finite(const Real& r, const char* op) {
  if (!mpfr_number_p(r.mid().get()) || !mpfr_number_p(r.rad().get()))
    throw PrecisionExhausted(std::string("non-finite enclosure in ") + op);
}

}  // namespace

PrecCtx PrecCtx::for_digits(long digits, long guard) {
  guard = std::max(guard, 32L);
  long bits = static_cast<long>(std::ceil(static_cast<double>(digits) * std::log2(10.0)));
  return {bits + guard, digits};
}

Mpfr::Mpfr(long prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}
Mpfr::Mpfr(const Mpfr& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}
Mpfr::Mpfr(Mpfr&& o) noexcept {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_swap(v_, o.v_);
}
Mpfr& Mpfr::operator=(const Mpfr& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}
Mpfr& Mpfr::operator=(Mpfr&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}
Mpfr::~Mpfr() { mpfr_clear(v_); }

Real::Real(long prec) : mid_(prec), rad_(kRadPrec) {}

Real Real::from_rat(const Rat& q, long prec) {
  Real r(prec);
  int t = mpfr_set_q(r.mid_.get(), q.get_mpq_t(), MPFR_RNDN);
  add_ulp_if(r.rad_, r.mid_, t);
  return r;
}

Real Real::from_mid_rad(const Mpfr& mid, const Mpfr& rad, long prec) {
  Real r(prec);
  int t = mpfr_set(r.mid_.get(), mid.get(), MPFR_RNDN);
  mpfr_abs(r.rad_.get(), rad.get(), MPFR_RNDU);
  add_ulp_if(r.rad_, r.mid_, t);
  return r;
}

Mpfr Real::lower() const {
  Mpfr r(prec() + 8);
  mpfr_sub(r.get(), mid_.get(), rad_.get(), MPFR_RNDD);
  return r;
}

Mpfr Real::upper() const {
  Mpfr r(prec() + 8);
  mpfr_add(r.get(), mid_.get(), rad_.get(), MPFR_RNDU);
  return r;
}

Mpfr Real::mag_upper() const {
  Mpfr r(kRadPrec);
  mpfr_abs(r.get(), mid_.get(), MPFR_RNDU);
  mpfr_add(r.get(), r.get(), rad_.get(), MPFR_RNDU);
  return r;
}

Mpfr Real::mag_lower() const {
  Mpfr r(kRadPrec);
  mpfr_abs(r.get(), mid_.get(), MPFR_RNDD);
  mpfr_sub(r.get(), r.get(), rad_.get(), MPFR_RNDD);
  if (mpfr_sgn(r.get()) < 0) mpfr_set_zero(r.get(), 1);
  return r;
}

bool Real::is_positive() const { return mpfr_sgn(lower().get()) > 0; }
bool Real::is_negative() const { return mpfr_sgn(upper().get()) < 0; }

bool Real::contains(const Rat& q) const {
  Rat d = q - to_rat(mid_);
  if (d < 0) d = -d;
  return d <= to_rat(rad_);
}

bool Real::contains(const Real& o) const {
  Rat d = to_rat(o.mid_) - to_rat(mid_);
  if (d < 0) d = -d;
  return d + to_rat(o.rad_) <= to_rat(rad_);
}

bool Real::overlaps(const Real& o) const {
  Rat d = to_rat(o.mid_) - to_rat(mid_);
  if (d < 0) d = -d;
  return d <= to_rat(rad_) + to_rat(o.rad_);
}

bool Real::radius_below_pow2(long e) const {
  Mpfr b(kRadPrec);
  mpfr_set_ui_2exp(b.get(), 1, e, MPFR_RNDN);
  return mpfr_lessequal_p(rad_.get(), b.get()) != 0;
}

bool Real::radius_below_pow10(long digits) const {
  Mpfr b(kRadPrec);
  mpfr_ui_pow_ui(b.get(), 10, static_cast<unsigned long>(std::max(digits, 0L)), MPFR_RNDU);
  mpfr_ui_div(b.get(), 1, b.get(), MPFR_RNDD);
  if (digits < 0) mpfr_ui_pow_ui(b.get(), 10, static_cast<unsigned long>(-digits), MPFR_RNDD);
  return mpfr_lessequal_p(rad_.get(), b.get()) != 0;
}

bool Real::radius_ok(long digits) const {
  Mpfr b(kRadPrec);
  mpfr_ui_pow_ui(b.get(), 10, static_cast<unsigned long>(digits), MPFR_RNDU);
  mpfr_ui_div(b.get(), 1, b.get(), MPFR_RNDD);
  Mpfr m = abs_down(mid_);
  if (mpfr_cmp_ui(m.get(), 1) > 0) mpfr_mul(b.get(), b.get(), m.get(), MPFR_RNDD);
  return mpfr_lessequal_p(rad_.get(), b.get()) != 0;
}

Real Real::operator-() const {
  Real r = *this;
  mpfr_neg(r.mid_.get(), r.mid_.get(), MPFR_RNDN);
  return r;
}

Real operator+(const Real& x, const Real& y) {
  Real r(std::max(x.prec(), y.prec()));
  int t = mpfr_add(r.mid_.get(), x.mid_.get(), y.mid_.get(), MPFR_RNDN);
  mpfr_add(r.rad_.get(), x.rad_.get(), y.rad_.get(), MPFR_RNDU);
  add_ulp_if(r.rad_, r.mid_, t);
  return r;
}

Real operator-(const Real& x, const Real& y) {
  Real r(std::max(x.prec(), y.prec()));
  int t = mpfr_sub(r.mid_.get(), x.mid_.get(), y.mid_.get(), MPFR_RNDN);
  mpfr_add(r.rad_.get(), x.rad_.get(), y.rad_.get(), MPFR_RNDU);
  add_ulp_if(r.rad_, r.mid_, t);
  return r;
}

Real operator*(const Real& x, const Real& y) {
  Real r(std::max(x.prec(), y.prec()));
  int t = mpfr_mul(r.mid_.get(), x.mid_.get(), y.mid_.get(), MPFR_RNDN);
  // |x| ry + |y| rx + rx ry
  Mpfr a = abs_up(x.mid_), b = abs_up(y.mid_), tmp(kRadPrec);
  mpfr_mul(r.rad_.get(), a.get(), y.rad_.get(), MPFR_RNDU);
  mpfr_mul(tmp.get(), b.get(), x.rad_.get(), MPFR_RNDU);
  mpfr_add(r.rad_.get(), r.rad_.get(), tmp.get(), MPFR_RNDU);
  mpfr_mul(tmp.get(), x.rad_.get(), y.rad_.get(), MPFR_RNDU);
  mpfr_add(r.rad_.get(), r.rad_.get(), tmp.get(), MPFR_RNDU);
  add_ulp_if(r.rad_, r.mid_, t);
  check_finite(r, "multiplication");
  return r;
}

Real operator/(const Real& x, const Real& y) {
  Mpfr ylo = y.mag_lower();
  if (mpfr_zero_p(ylo.get())) throw DivisionByZero("division by a ball containing zero");
  Real r(std::max(x.prec(), y.prec()));
  int t = mpfr_div(r.mid_.get(), x.mid_.get(), y.mid_.get(), MPFR_RNDN);
  // (rx + |x/y| ry) / (|y| - ry)
  Mpfr q = abs_up(r.mid_), tmp(kRadPrec);
  mpfr_mul(tmp.get(), q.get(), y.rad_.get(), MPFR_RNDU);
  mpfr_add(tmp.get(), tmp.get(), x.rad_.get(), MPFR_RNDU);
  mpfr_div(r.rad_.get(), tmp.get(), ylo.get(), MPFR_RNDU);
  add_ulp_if(r.rad_, r.mid_, t);
  check_finite(r, "division");
  return r;
}

Real Real::mul_si(long k) const {
  Real r(prec());
  int t = mpfr_mul_si(r.mid_.get(), mid_.get(), k, MPFR_RNDN);
  mpfr_mul_ui(r.rad_.get(), rad_.get(), static_cast<unsigned long>(std::labs(k)), MPFR_RNDU);
  add_ulp_if(r.rad_, r.mid_, t);
  return r;
}

Real Real::div_si(long k) const {
  if (k == 0) throw DivisionByZero("division by integer zero");
  Real r(prec());
  int t = mpfr_div_si(r.mid_.get(), mid_.get(), k, MPFR_RNDN);
  mpfr_div_ui(r.rad_.get(), rad_.get(), static_cast<unsigned long>(std::labs(k)), MPFR_RNDU);
  add_ulp_if(r.rad_, r.mid_, t);
  return r;
}

Real Real::mul_rat(const Rat& q) const { return *this * Real::from_rat(q, prec()); }

void Real::add_error(const Mpfr& e) {
  Mpfr a = abs_up(e);
  mpfr_add(rad_.get(), rad_.get(), a.get(), MPFR_RNDU);
}

void Real::add_error_pow2(long e) {
  Mpfr u(kRadPrec);
  mpfr_set_ui_2exp(u.get(), 1, e, MPFR_RNDU);
  mpfr_add(rad_.get(), rad_.get(), u.get(), MPFR_RNDU);
}

Real Real::with_prec(long p) const {
  Real r(p);
  int t = mpfr_set(r.mid_.get(), mid_.get(), MPFR_RNDN);
  mpfr_set(r.rad_.get(), rad_.get(), MPFR_RNDU);
  add_ulp_if(r.rad_, r.mid_, t);
  return r;
}

std::string Real::to_string(long digits) const {
  digits = std::max(digits, 1L);
  std::string out;
  Mpfr shown_rad = rad_;
  if (mpfr_zero_p(mid_.get())) {
    out = "0";
  } else {
    mpfr_exp_t e10 = 0;
    std::unique_ptr<char, void (*)(char*)> s(
        mpfr_get_str(nullptr, &e10, 10, static_cast<std::size_t>(digits), mid_.get(), MPFR_RNDN), mpfr_free_str);
    std::string d = s.get();
    if (d[0] == '-') {
      out += '-';
      d.erase(0, 1);
    }
    out += d.substr(0, 1);
    if (d.size() > 1) out += "." + d.substr(1);
    out += "e" + std::to_string(static_cast<long>(e10) - 1);
    // Half a unit in the last printed decimal place.
    Mpfr half(kRadPrec);
    mpfr_ui_pow_ui(half.get(), 10, 1, MPFR_RNDU);
    mpfr_pow_si(half.get(), half.get(), static_cast<long>(e10) - digits, MPFR_RNDU);
    mpfr_div_ui(half.get(), half.get(), 2, MPFR_RNDU);
    mpfr_add(shown_rad.get(), shown_rad.get(), half.get(), MPFR_RNDU);
  }
  if (mpfr_zero_p(shown_rad.get())) return out + " ± 0";
  mpfr_exp_t re = 0;
  std::unique_ptr<char, void (*)(char*)> rs(mpfr_get_str(nullptr, &re, 10, 1, shown_rad.get(), MPFR_RNDU),
                                            mpfr_free_str);
  return out + " ± " + std::string(rs.get()) + "e" + std::to_string(static_cast<long>(re) - 1);
}

Real abs(const Real& x) { return mpfr_sgn(x.mid().get()) < 0 ? -x : x; }

Real sqrt(const Real& x) {
  if (x.is_exact() && mpfr_zero_p(x.mid().get())) return x;
  if (!x.is_positive()) throw DomainError("sqrt of a ball not contained in (0, inf)");
  Mpfr mid(x.prec()), rad(kRadPrec), lo = x.lower();
  int t = mpfr_sqrt(mid.get(), x.mid().get(), MPFR_RNDN);
  mpfr_sqrt(lo.get(), lo.get(), MPFR_RNDD);
  mpfr_mul_ui(lo.get(), lo.get(), 2, MPFR_RNDD);
  mpfr_div(rad.get(), x.rad().get(), lo.get(), MPFR_RNDU);
  add_ulp_if(rad, mid, t);
  return Real::from_mid_rad(mid, rad, x.prec());
}

Real log(const Real& x) {
  if (!x.is_positive()) throw DomainError("log of a ball not contained in (0, inf)");
  Mpfr mid(x.prec()), rad(kRadPrec), lo = x.lower();
  int t = mpfr_log(mid.get(), x.mid().get(), MPFR_RNDN);
  mpfr_div(rad.get(), x.rad().get(), lo.get(), MPFR_RNDU);
  add_ulp_if(rad, mid, t);
  return Real::from_mid_rad(mid, rad, x.prec());
}

Real exp(const Real& x) {
  Mpfr mid(x.prec()), rad(kRadPrec), hi = x.upper();
  int t = mpfr_exp(mid.get(), x.mid().get(), MPFR_RNDN);
  mpfr_exp(hi.get(), hi.get(), MPFR_RNDU);
  mpfr_mul(rad.get(), hi.get(), x.rad().get(), MPFR_RNDU);
  add_ulp_if(rad, mid, t);
  Real r = Real::from_mid_rad(mid, rad, x.prec());
  check_finite(r, "exp");
  return r;
}

Real cos(const Real& x) {
  Mpfr mid(x.prec()), rad = x.rad();
  int t = mpfr_cos(mid.get(), x.mid().get(), MPFR_RNDN);
  add_ulp_if(rad, mid, t);
  if (t != 0 && mpfr_zero_p(mid.get())) mpfr_set_ui_2exp(rad.get(), 1, -x.prec(), MPFR_RNDU);
  return Real::from_mid_rad(mid, rad, x.prec());
}

Real sin(const Real& x) {
  Mpfr mid(x.prec()), rad = x.rad();
  int t = mpfr_sin(mid.get(), x.mid().get(), MPFR_RNDN);
  add_ulp_if(rad, mid, t);
  return Real::from_mid_rad(mid, rad, x.prec());
}

Real pi(long prec) {
  Mpfr mid(prec), rad(kRadPrec);
  int t = mpfr_const_pi(mid.get(), MPFR_RNDN);
  add_ulp_if(rad, mid, t);
  return Real::from_mid_rad(mid, rad, prec);
}

namespace {
// q reduced into (-1, 1] modulo 2.
Rat reduce_mod2(const Rat& q) {
  Rat half = q / 2;
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), half.get_num_mpz_t(), half.get_den_mpz_t());
  Rat r = q - Rat(fl) * 2;  // in [0, 2)
  if (r > 1) r -= 2;
  return r;
}
}  // namespace

Real cos_pi(const Rat& q, long prec) {
  Rat r = reduce_mod2(q);
  if (r == 0) return Real::from_long(1, prec);
  if (r == 1) return Real::from_long(-1, prec);
  if (r == Rat(1, 2) || r == Rat(-1, 2)) return Real::from_long(0, prec);
  if (r < 0) r = -r;
  if (r > Rat(1, 2)) return -cos_pi(1 - r, prec);
  return cos(pi(prec + 16).mul_rat(r)).with_prec(prec);
}

Real sin_pi(const Rat& q, long prec) { return cos_pi(Rat(1, 2) - q, prec); }

Real sin_pi(const Real& x) {
  // sin(pi (n + y)) = (-1)^n sin(pi y)
  long n = mpfr_get_si(x.mid().get(), MPFR_RNDN);
  Real y = x - Real::from_long(n, x.prec());
  Real s = sin(pi(x.prec() + 16) * y).with_prec(x.prec());
  return (n % 2 == 0) ? s : -s;
}

Real pow_int(const Real& x, long n) {
  if (n < 0) return Real::from_long(1, x.prec()) / pow_int(x, -n);
  Real result = Real::from_long(1, x.prec());
  Real base = x;
  unsigned long e = static_cast<unsigned long>(n);
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Real pow_rat(const Real& x, const Rat& q) {
  if (is_integer(q)) {
    if (!q.get_num().fits_slong_p()) throw DomainError("integer exponent too large");
    return pow_int(x, q.get_num().get_si());
  }
  if (!x.is_positive()) throw DomainError("non-integer power of a ball not contained in (0, inf)");
  return exp(log(x) * Real::from_rat(q, x.prec()));
}

Real pochhammer_num(const Real& x, unsigned long n) {
  Real r = Real::from_long(1, x.prec());
  Real t = x;
  for (unsigned long k = 0; k < n; ++k) {
    r = r * t;
    t = t + Real::from_long(1, x.prec());
  }
  return r;
}

Real hull(const Real& x, const Real& y) {
  long p = std::max(x.prec(), y.prec());
  Mpfr lo(p + 8), hi(p + 8), xl = x.lower(), yl = y.lower(), xh = x.upper(), yh = y.upper();
  mpfr_min(lo.get(), xl.get(), yl.get(), MPFR_RNDD);
  mpfr_max(hi.get(), xh.get(), yh.get(), MPFR_RNDU);
  Mpfr mid(p), rad(kRadPrec), t(p + 8);
  mpfr_add(mid.get(), lo.get(), hi.get(), MPFR_RNDN);
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  mpfr_sub(t.get(), hi.get(), mid.get(), MPFR_RNDU);
  mpfr_set(rad.get(), t.get(), MPFR_RNDU);
  mpfr_sub(t.get(), mid.get(), lo.get(), MPFR_RNDU);
  mpfr_max(rad.get(), rad.get(), t.get(), MPFR_RNDU);
  return Real::from_mid_rad(mid, rad, p);
}

}  // namespace appell
