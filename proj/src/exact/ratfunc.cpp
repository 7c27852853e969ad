#include "appell/ratfunc.hpp"

#include "appell/errors.hpp"

namespace appell {

namespace {

Poly divide_or_throw(const Poly& f, const Poly& d) {
  auto q = f.divide_exact(d);
  if (!q) throw Error("internal: gcd does not divide operand");
  return std::move(*q);
}

bool is_one(const Poly& p) { return p.is_constant() && p.constant_value() == 1; }

}  // namespace

RatF::RatF(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw DivisionByZero("rational function with zero denominator");
  if (num.is_zero()) {
    den_ = Poly(1);
    return;
  }
  Poly g = gcd(num, den);
  if (is_one(g)) {
    num_ = num;
    den_ = den;
  } else {
    num_ = divide_or_throw(num, g);
    den_ = divide_or_throw(den, g);
  }
  normalize_scale();
}

void RatF::normalize_scale() {
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  Rat c = den_.integer_content();
  if (c != 1) {
    Rat inv = Rat(1) / c;
    den_ *= inv;
    num_ *= inv;
  }
}

Rat RatF::constant_value() const { return num_.constant_value() / den_.constant_value(); }

RatF RatF::operator-() const { return RatF(Raw{}, -num_, den_); }

RatF operator+(const RatF& f, const RatF& g) {
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  if (f.den_ == g.den_) return RatF(f.num_ + g.num_, f.den_);
  Poly d = gcd(f.den_, g.den_);
  if (is_one(d)) {
    // Cross terms cannot share a factor with either denominator.
    Poly num = f.num_ * g.den_ + g.num_ * f.den_;
    RatF r(RatF::Raw{}, std::move(num), f.den_ * g.den_);
    if (r.num_.is_zero()) return RatF();
    r.normalize_scale();
    return r;
  }
  Poly fd = divide_or_throw(f.den_, d);
  Poly gd = divide_or_throw(g.den_, d);
  Poly t = f.num_ * gd + g.num_ * fd;
  if (t.is_zero()) return RatF();
  Poly h = gcd(t, d);
  if (!is_one(h)) {
    t = divide_or_throw(t, h);
    d = divide_or_throw(d, h);
  }
  RatF r(RatF::Raw{}, std::move(t), fd * gd * d);
  r.normalize_scale();
  return r;
}

RatF operator-(const RatF& f, const RatF& g) { return f + (-g); }

RatF operator*(const RatF& f, const RatF& g) {
  if (f.is_zero() || g.is_zero()) return RatF();
  Poly g1 = gcd(f.num_, g.den_);
  Poly g2 = gcd(g.num_, f.den_);
  Poly a = is_one(g1) ? f.num_ : divide_or_throw(f.num_, g1);
  Poly d = is_one(g1) ? g.den_ : divide_or_throw(g.den_, g1);
  Poly c = is_one(g2) ? g.num_ : divide_or_throw(g.num_, g2);
  Poly b = is_one(g2) ? f.den_ : divide_or_throw(f.den_, g2);
  RatF r(RatF::Raw{}, a * c, b * d);
  r.normalize_scale();
  return r;
}

RatF operator/(const RatF& f, const RatF& g) {
  if (g.is_zero()) throw DivisionByZero("division by the zero rational function");
  RatF inv(RatF::Raw{}, g.den_, g.num_);
  inv.normalize_scale();
  return f * inv;
}

RatF RatF::pow(long e) const {
  if (e < 0) return RatF(1) / pow(-e);
  // Powers of coprime polynomials stay coprime.
  RatF r(Raw{}, num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
  r.normalize_scale();
  return r;
}

Rat RatF::evaluate(const Assignment& point) const {
  Rat d = den_.evaluate(point);
  if (d == 0) throw DivisionByZero("rational function has a pole at the evaluation point: " + to_string());
  return num_.evaluate(point) / d;
}

RatF RatF::substitute(const std::array<std::optional<Poly>, kNumVars>& images) const {
  return RatF(num_.substitute(images), den_.substitute(images));
}

std::string RatF::to_string() const {
  if (is_one(den_)) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

RatF ratf_shift(const RatF& f, Var var, const Poly& image) {
  std::array<std::optional<Poly>, kNumVars> images;
  images[static_cast<std::size_t>(var)] = image;
  return f.substitute(images);
}

RatF pochhammer_symbolic(const Poly& base, unsigned count) {
  Poly prod(1);
  for (unsigned k = 0; k < count; ++k) prod *= base + Poly(Rat(k));
  return RatF(prod);
}

}  // namespace appell
