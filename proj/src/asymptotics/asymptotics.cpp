#include "appell/asymptotics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "appell/errors.hpp"
#include "appell/euler_integral.hpp"
#include "appell/gamma.hpp"
#include "appell/hypergeom.hpp"

namespace appell {

PhaseFn PhaseFn::example2() { return {Rat(1), {{Rat(80, 81), Rat(-2)}, {Rat(16, 15), Rat(4)}}}; }

namespace {

using UPoly = std::vector<Rat>;

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

UPoly mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

UPoly add(UPoly a, const UPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rat(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  trim(a);
  return a;
}

UPoly scale(UPoly a, const Rat& c) {
  for (auto& x : a) x *= c;
  trim(a);
  return a;
}

UPoly derivative(const UPoly& p) {
  UPoly r;
  for (std::size_t i = 1; i < p.size(); ++i) r.push_back(p[i] * Rat(static_cast<long>(i)));
  trim(r);
  return r;
}

Rat eval(const UPoly& p, const Rat& x) {
  Rat r(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
  return r;
}

Real eval(const UPoly& p, const Real& x) {
  Real r = Real::from_long(0, x.prec());
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + Real::from_rat(*it, x.prec());
  return r;
}

UPoly remainder(UPoly a, const UPoly& b) {
  while (a.size() >= b.size() && !a.empty()) {
    Rat c = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

class Sturm {
 public:
  explicit Sturm(const UPoly& p) {
    seq_.push_back(p);
    seq_.push_back(derivative(p));
    while (!seq_.back().empty()) {
      UPoly r = scale(remainder(seq_[seq_.size() - 2], seq_.back()), Rat(-1));
      if (r.empty()) break;
      seq_.push_back(std::move(r));
    }
  }

  /// Distinct roots in the open interval (lo, hi).
  long count(const Rat& lo, const Rat& hi) const {
    long c = variations(lo) - variations(hi);
    if (eval(seq_[0], hi) == 0) --c;
    return c;
  }

 private:
  std::vector<UPoly> seq_;

  long variations(const Rat& x) const {
    long v = 0;
    int last = 0;
    for (const auto& p : seq_) {
      int s = sgn(eval(p, x));
      if (s == 0) continue;
      if (last != 0 && s != last) ++v;
      last = s;
    }
    return v;
  }
};

Rat to_rat(const Mpfr& m) {
  Rat q;
  mpfr_get_q(q.get_mpq_t(), m.get());
  return q;
}

Real ball(const Rat& lo, const Rat& hi, long prec) {
  Real x = Real::from_rat((lo + hi) / 2, prec);
  Mpfr r(64);
  Rat half = (hi - lo) / 2;
  mpfr_set_q(r.get(), half.get_mpq_t(), MPFR_RNDU);
  x.add_error(r);
  return x;
}

bool narrow_enough(const Rat& lo, const Rat& hi, long bits) {
  Rat w = hi - lo;
  Rat lim(1);
  mpz_mul_2exp(lim.get_den_mpz_t(), lim.get_den_mpz_t(), static_cast<mp_bitcnt_t>(bits));
  return w <= lim;
}

// Tightens an isolating interval (lo, hi) of a root of p down to 2^-bits.
Real refine_root(const UPoly& p, const Sturm& st, Rat lo, Rat hi, long bits) {
  const UPoly dp = derivative(p);
  const long prec = bits + 32;
  while (!narrow_enough(lo, hi, bits)) {
    Rat width = hi - lo;
    Real x = ball(lo, hi, prec);
    Real d = eval(dp, x);
    if (!d.contains_zero()) {
      Rat m = (lo + hi) / 2;
      Real n = Real::from_rat(m, prec) - Real::from_rat(eval(p, m), prec) / d;
      Rat nlo = to_rat(n.lower()), nhi = to_rat(n.upper());
      if (nlo > lo) lo = nlo;
      if (nhi < hi) hi = nhi;
      if (lo >= hi) return Real::from_rat(lo, prec);
      if (hi - lo < width / 2) continue;
    }
    Rat m = (lo + hi) / 2;
    if (eval(p, m) == 0) return Real::from_rat(m, prec);
    if (st.count(lo, m) > 0) {
      hi = m;
    } else {
      lo = m;
    }
  }
  return ball(lo, hi, prec);
}

void isolate(const Sturm& st, const UPoly& p, const Rat& lo, const Rat& hi, std::vector<std::pair<Rat, Rat>>& out,
             std::vector<Rat>& exact) {
  long c = st.count(lo, hi);
  if (c == 0) return;
  if (c == 1) {
    out.emplace_back(lo, hi);
    return;
  }
  Rat m = (lo + hi) / 2;
  if (eval(p, m) == 0) exact.push_back(m);
  isolate(st, p, lo, m, out, exact);
  isolate(st, p, m, hi, out, exact);
}

bool nonnegative_integer(const Rat& q) { return is_integer(q) && q >= 0; }

}  // namespace

std::vector<Rat> phase_derivative_numerator(const PhaseFn& ph) {
  auto lin = [](const Rat& u) { return UPoly{Rat(1), Rat(-u)}; };
  UPoly all{Rat(1)};
  for (const auto& f : ph.factors) all = mul(all, lin(f.u));
  UPoly n = scale(all, ph.p0);
  for (std::size_t i = 0; i < ph.factors.size(); ++i) {
    UPoly rest{Rat(0), Rat(1)};
    for (std::size_t j = 0; j < ph.factors.size(); ++j)
      if (j != i) rest = mul(rest, lin(ph.factors[j].u));
    n = add(n, scale(rest, -ph.factors[i].p * ph.factors[i].u));
  }
  return n;
}

Real phase_value(const PhaseFn& ph, const Real& t) {
  if (!t.is_positive()) throw DomainError("phase evaluated at t <= 0");
  Real h = log(t).mul_rat(ph.p0);
  int sign = 1;
  for (const auto& f : ph.factors) {
    if (f.p == 0) continue;
    Real v = Real::from_long(1, t.prec()) - t.mul_rat(f.u);
    if (v.contains_zero()) throw DomainError("phase evaluated at a factor zero");
    if (v.is_negative()) {
      if (!is_integer(f.p)) throw DomainError("non-integer power of a negative factor in the phase");
      if (f.p.get_num() % 2 != 0) sign = -sign;
      v = -v;
    }
    h = h + log(v).mul_rat(f.p);
  }
  if (sign < 0) throw DomainError("phase argument is negative");
  return h;
}

Real phase_derivative(const PhaseFn& ph, const Real& t) {
  Real d = Real::from_rat(ph.p0, t.prec()) / t;
  for (const auto& f : ph.factors) {
    Real v = Real::from_long(1, t.prec()) - t.mul_rat(f.u);
    d = d - Real::from_rat(f.p * f.u, t.prec()) / v;
  }
  return d;
}

std::optional<double> phase_value_double(const PhaseFn& ph, double t) {
  if (t <= 0) return std::nullopt;
  double h = ph.p0.get_d() * std::log(t);
  bool negative = false;
  for (const auto& f : ph.factors) {
    double v = 1 - f.u.get_d() * t;
    if (v == 0) return std::nullopt;
    if (v < 0) {
      if (!is_integer(f.p)) return std::nullopt;
      if (f.p.get_num() % 2 != 0) negative = !negative;
    }
    h += f.p.get_d() * std::log(std::fabs(v));
  }
  if (negative) return std::nullopt;
  return h;
}

std::vector<CriticalPoint> critical_points(const PhaseFn& ph, const PrecCtx& ctx) {
  for (const auto& f : ph.factors) {
    if (f.u <= 1 || nonnegative_integer(f.p)) continue;
    throw DomainError("factor (1 - " + to_string(f.u) + " t) vanishes in (0, 1) with exponent " + to_string(f.p));
  }
  UPoly n = phase_derivative_numerator(ph);
  if (n.empty()) throw DomainError("h' vanishes identically");
  for (const auto& f : ph.factors) {
    if (f.u > 1 && f.p != 0 && eval(n, Rat(1 / f.u)) == 0)
      throw DomainError("critical point at the factor zero t = " + to_string(Rat(1 / f.u)));
  }
  std::vector<CriticalPoint> out;
  if (n.size() < 2) return out;
  Sturm st(n);
  std::vector<std::pair<Rat, Rat>> intervals;
  std::vector<Rat> exact;
  isolate(st, n, Rat(0), Rat(1), intervals, exact);
  std::vector<Real> roots;
  for (const Rat& r : exact) roots.push_back(Real::from_rat(r, ctx.working_bits));
  for (const auto& [lo, hi] : intervals) roots.push_back(refine_root(n, st, lo, hi, ctx.working_bits));
  std::sort(roots.begin(), roots.end(),
            [](const Real& l, const Real& r) { return mpfr_less_p(l.mid().get(), r.mid().get()); });
  for (const Real& t : roots) out.push_back({t, phase_value(ph, t)});
  return out;
}

namespace {

template <class F>
void parallel_for(std::size_t count, unsigned jobs, F&& body) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) body(i);
  };
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < std::max(1u, jobs); ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

Rat ratio_pow(long n) {
  Rat r(1);
  mpz_ui_pow_ui(r.get_num_mpz_t(), 625, static_cast<unsigned long>(n));
  mpz_ui_pow_ui(r.get_den_mpz_t(), 81, static_cast<unsigned long>(n));
  r.canonicalize();
  return r;
}

Real laplace_term(long n, const PrecCtx& ctx) {
  if (n < 0 || n > kLaplaceMaxN)
    throw DomainError("n = " + std::to_string(n) + " outside [0, " + std::to_string(kLaplaceMaxN) + "]");
  ParamsF1 p{Rat(1, 4) + n, Rat(1, 2) + 2 * n, Rat(-4 * n), Rat(3, 4) + n};
  // The prefactor (625/81)^n scales the absolute error, so ask for that many more digits.
  long extra = static_cast<long>(std::ceil(static_cast<double>(n) * std::log10(625.0 / 81.0)));
  PrecCtx cur{ctx.working_bits + static_cast<long>(std::ceil(extra * std::log2(10.0))), ctx.target_digits + extra};
  return eval_f1_terminating(p, Rat(80, 81), Rat(16, 15), cur).value.mul_rat(ratio_pow(n));
}

}  // namespace

LimitSequence laplace_sequence(const std::vector<long>& n_list, const PrecCtx& ctx, unsigned jobs) {
  LimitSequence seq;
  seq.n = n_list;
  seq.terms.assign(n_list.size(), Real(ctx.working_bits));
  parallel_for(n_list.size(), jobs, [&](std::size_t i) { seq.terms[i] = laplace_term(n_list[i], ctx); });
  return seq;
}

Real laplace_a(long n, const PrecCtx& ctx) {
  Real g = gamma_rat(Rat(3, 4) + n, ctx) / (gamma_rat(Rat(1, 4) + n, ctx) * gamma_rat(Rat(1, 2), ctx));
  return g.mul_rat(ratio_pow(n));
}

Real laplace_b_quadrature(long n, const PrecCtx& ctx) {
  EulerIntegrand f{Rat(n) - Rat(3, 4),
                   Rat(-1, 2),
                   {{Rat(1), Rat(-80, 81), Rat(-1, 2) - 2 * n}, {Rat(1), Rat(-16, 15), Rat(4 * n)}}};
  return integrate_euler(f, ctx);
}

std::vector<AsymptoticRow> asymptotic_forms(const LimitSequence& seq, const PrecCtx& ctx) {
  std::vector<AsymptoticRow> rows;
  const long wp = ctx.working_bits;
  Real pi_ = pi(wp);
  for (std::size_t i = 0; i < seq.n.size(); ++i) {
    long n = seq.n[i];
    if (n < 4) continue;
    AsymptoticRow r{n, seq.terms[i], laplace_a(n, ctx), Real(wp), Real(wp), Real(wp)};
    r.b = r.term / r.a;
    Real nn = Real::from_long(n, wp);
    Real a_form = sqrt(nn / pi_).mul_rat(ratio_pow(n));
    Real b_form = sqrt(pi_ / nn).mul_rat(Rat(9, 5) / ratio_pow(n));
    r.a_ratio = r.a / a_form;
    r.b_ratio = r.b / b_form;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<AsymptoticRow> asymptotic_forms_check(const std::vector<long>& n_list, const PrecCtx& ctx,
                                                  unsigned jobs) {
  for (long n : n_list)
    if (n < 4) throw DomainError("asymptotic forms need n >= 4, got " + std::to_string(n));
  return asymptotic_forms(laplace_sequence(n_list, ctx, jobs), ctx);
}

namespace {

Real neville(const std::vector<Rat>& h, const std::vector<Real>& s) {
  std::vector<Real> p = s;
  const std::size_t m = h.size();
  for (std::size_t k = 1; k < m; ++k) {
    for (std::size_t i = 0; i + k < m; ++i) {
      // Value at 0 of the interpolant through points i..i+k.
      Real num = p[i + 1].mul_rat(h[i]) - p[i].mul_rat(h[i + k]);
      p[i] = num.mul_rat(Rat(1) / (h[i] - h[i + k]));
    }
  }
  return p[0];
}

}  // namespace

Extrapolation richardson_extrapolate(const LimitSequence& seq) {
  std::vector<Rat> h;
  std::vector<Real> s;
  for (std::size_t i = 0; i < seq.n.size(); ++i) {
    if (seq.n[i] <= 0) continue;
    h.push_back(Rat(1, seq.n[i]));
    s.push_back(seq.terms[i]);
  }
  if (h.size() < 3) throw DomainError("extrapolation needs at least 3 terms with n >= 1");
  Extrapolation out{neville(h, s), 0.0, false};
  Real coarser = neville(std::vector<Rat>(h.begin() + 1, h.end()), std::vector<Real>(s.begin() + 1, s.end()));
  Real d = out.value - coarser;
  out.error_estimate = std::fabs(d.mid_double()) + d.rad_double();
  return out;
}

namespace {

std::string decimal(const Real& x, long digits) {
  char buf[256];
  mpfr_snprintf(buf, sizeof buf, "%.*Re", static_cast<int>(std::min(digits, 60L)), x.mid().get());
  return buf;
}

}  // namespace

std::string asymptotic_table_csv(const std::vector<AsymptoticRow>& rows, long digits) {
  std::ostringstream os;
  os << "n,term,A,B,A_ratio,B_ratio\n";
  for (const auto& r : rows)
    os << r.n << ',' << decimal(r.term, digits) << ',' << decimal(r.a, digits) << ',' << decimal(r.b, digits) << ','
       << decimal(r.a_ratio, digits) << ',' << decimal(r.b_ratio, digits) << '\n';
  return os.str();
}

std::string phase_samples_csv(const PhaseFn& ph, int samples) {
  std::ostringstream os;
  os.precision(17);
  os << "t,h\n";
  for (int i = 1; i <= samples; ++i) {
    double t = static_cast<double>(i) / (samples + 1);
    os << t << ',';
    if (auto h = phase_value_double(ph, t)) os << *h;
    os << '\n';
  }
  return os.str();
}

}  // namespace appell
