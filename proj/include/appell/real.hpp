#pragma once

#include <mpfr.h>

#include <string>

#include "appell/rational.hpp"

namespace appell {

/// Working precision in bits and the number of decimal digits the caller wants.
struct PrecCtx {
  long working_bits;
  long target_digits;
  /// ceil(digits * log2 10) plus `guard` bits (at least 32).
  static PrecCtx for_digits(long digits, long guard = 64);
  PrecCtx with_bits(long bits) const { return {bits, target_digits}; }
};

/// Owning wrapper around an mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(long prec = 64);
  Mpfr(const Mpfr& o);
  Mpfr(Mpfr&& o) noexcept;
  Mpfr& operator=(const Mpfr& o);
  Mpfr& operator=(Mpfr&& o) noexcept;
  ~Mpfr();
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  long prec() const { return static_cast<long>(mpfr_get_prec(v_)); }

 private:
  mpfr_t v_;
};

/// Ball [mid - rad, mid + rad]. Every operation returns a ball containing the
/// exact result for every choice of points in the input balls.
class Real {
 public:
  explicit Real(long prec = 128);
  static Real from_rat(const Rat& q, long prec);
  static Real from_long(long v, long prec) { return from_rat(Rat(v), prec); }
  /// Ball with the given midpoint (rounded to prec) and radius.
  static Real from_mid_rad(const Mpfr& mid, const Mpfr& rad, long prec);

  long prec() const { return mid_.prec(); }
  const Mpfr& mid() const { return mid_; }
  const Mpfr& rad() const { return rad_; }
  double mid_double() const { return mpfr_get_d(mid_.get(), MPFR_RNDN); }
  double rad_double() const { return mpfr_get_d(rad_.get(), MPFR_RNDU); }
  bool is_exact() const { return mpfr_zero_p(rad_.get()) != 0; }

  /// Lower and upper endpoints rounded outward.
  Mpfr lower() const;
  Mpfr upper() const;
  /// Upper bound on |x| over the ball and lower bound (0 if the ball contains 0).
  Mpfr mag_upper() const;
  Mpfr mag_lower() const;

  bool is_positive() const;   // whole ball > 0
  bool is_negative() const;   // whole ball < 0
  bool contains_zero() const { return !is_positive() && !is_negative(); }
  bool contains(const Rat& q) const;
  bool contains(const Real& other) const;
  bool overlaps(const Real& other) const;
  /// True if rad <= 2^e.
  bool radius_below_pow2(long e) const;
  /// True if rad <= 10^(-digits) * max(1, |mid|) (relative for large values).
  bool radius_ok(long digits) const;
  /// True if rad <= 10^(-digits).
  bool radius_below_pow10(long digits) const;

  Real operator-() const;
  friend Real operator+(const Real& x, const Real& y);
  friend Real operator-(const Real& x, const Real& y);
  friend Real operator*(const Real& x, const Real& y);
  /// Throws DivisionByZero when the divisor ball contains zero.
  friend Real operator/(const Real& x, const Real& y);
  Real& operator+=(const Real& y) { return *this = *this + y; }
  Real& operator-=(const Real& y) { return *this = *this - y; }
  Real& operator*=(const Real& y) { return *this = *this * y; }
  Real& operator/=(const Real& y) { return *this = *this / y; }
  Real mul_si(long k) const;
  Real div_si(long k) const;
  Real mul_rat(const Rat& q) const;

  /// Widens the radius by r (>= 0, rounded up).
  void add_error(const Mpfr& r);
  void add_error_pow2(long e);
  /// Same ball at another midpoint precision.
  Real with_prec(long prec) const;

  /// "d.ddd...e<exp> ± <radius>", midpoint shown with `digits` significant digits;
  /// the radius includes the decimal rounding of the midpoint.
  std::string to_string(long digits) const;

 private:
  Mpfr mid_;
  Mpfr rad_;
  friend class RealAccess;
};

Real abs(const Real& x);
Real sqrt(const Real& x);    // requires x > 0 (or exactly 0)
Real log(const Real& x);     // requires x > 0
Real exp(const Real& x);
Real cos(const Real& x);
Real sin(const Real& x);
Real pi(long prec);
/// cos(pi q) and sin(pi q) with exact reduction of q modulo 2.
Real cos_pi(const Rat& q, long prec);
Real sin_pi(const Rat& q, long prec);
Real sin_pi(const Real& x);
Real pow_int(const Real& x, long n);
/// x^q; integer q allowed for any x (x != 0 if q < 0), otherwise x > 0 required.
Real pow_rat(const Real& x, const Rat& q);
/// Rising factorial x (x+1) ... (x+n-1).
Real pochhammer_num(const Real& x, unsigned long n);
/// Union hull of two balls.
Real hull(const Real& x, const Real& y);

}  // namespace appell
