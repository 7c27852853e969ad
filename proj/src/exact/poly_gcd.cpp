// Multivariate gcd over Q by content / primitive-part recursion with a
// subresultant remainder sequence in the chosen main variable.
//
// Before the expensive path, images modulo a prime at a random point bound
// deg_v(gcd) from above for every variable v. The bound is sound whenever the
// leading coefficient in v survives the evaluation, so an image gcd of degree
// zero proves the true gcd is free of v.

#include <algorithm>
#include <random>

#include "appell/errors.hpp"
#include "appell/poly.hpp"

namespace appell {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
constexpr u64 kPrime = (u64{1} << 61) - 1;

u64 mulmod(u64 a, u64 b) {
  u128 p = static_cast<u128>(a) * b;
  u64 lo = static_cast<u64>(p & kPrime);
  u64 hi = static_cast<u64>(p >> 61);
  u64 s = lo + hi;
  return s >= kPrime ? s - kPrime : s;
}
u64 addmod(u64 a, u64 b) {
  u64 s = a + b;
  return s >= kPrime ? s - kPrime : s;
}
u64 submod(u64 a, u64 b) { return a >= b ? a - b : a + kPrime - b; }
u64 powmod(u64 b, u64 e) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, b);
    b = mulmod(b, b);
    e >>= 1;
  }
  return r;
}
u64 invmod(u64 a) { return powmod(a, kPrime - 2); }

u64 reduce_int(const mpz_t z) {
  // unsigned long is 64 bits on every supported target
  static const Int prime(static_cast<unsigned long>(kPrime));
  Int m;
  mpz_fdiv_r(m.get_mpz_t(), z, prime.get_mpz_t());
  return static_cast<u64>(m.get_ui());
}

std::optional<u64> reduce_rat(const Rat& q) {
  u64 num = reduce_int(q.get_num_mpz_t());
  u64 den = reduce_int(q.get_den_mpz_t());
  if (den == 0) return std::nullopt;
  return mulmod(num, invmod(den));
}

using ModPoly = std::vector<u64>;  // coefficient k multiplies v^k

void trim(ModPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

ModPoly mod_gcd(ModPoly a, ModPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a <- a mod b
    u64 inv = invmod(b.back());
    while (a.size() >= b.size()) {
      u64 f = mulmod(a.back(), inv);
      std::size_t off = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[off + i] = submod(a[off + i], mulmod(f, b[i]));
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a;
}

// Image of f in Z_p[v] with every other variable set from `point`.
// Returns nullopt when a coefficient denominator vanishes mod p.
std::optional<ModPoly> image(const Poly& f, Var v, const std::array<u64, kNumVars>& point) {
  ModPoly out(f.degree(v) + 1, 0);
  for (const auto& t : f.terms()) {
    auto c = reduce_rat(t.coeff);
    if (!c) return std::nullopt;
    u64 val = *c;
    for (Var w : kAllVars) {
      if (w == v) continue;
      unsigned e = t.mono.exponent(w);
      if (e) val = mulmod(val, powmod(point[static_cast<std::size_t>(w)], e));
    }
    auto k = t.mono.exponent(v);
    out[k] = addmod(out[k], val);
  }
  return out;
}

// Upper bound on deg_v gcd(f, g); nullopt if no lucky evaluation was found.
std::optional<unsigned> degree_bound(const Poly& f, const Poly& g, Var v, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::array<u64, kNumVars> point{};
    for (auto& p : point) p = rng() % kPrime;
    auto fi = image(f, v, point);
    auto gi = image(g, v, point);
    if (!fi || !gi) continue;
    if (fi->back() == 0 || gi->back() == 0) continue;
    ModPoly h = mod_gcd(*fi, *gi);
    return static_cast<unsigned>(h.empty() ? 0 : h.size() - 1);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Univariate view with polynomial coefficients.

using UPoly = std::vector<Poly>;

void trim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int deg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly prem(UPoly a, const UPoly& b) {
  const int db = deg(b);
  const Poly& lb = b.back();
  int e = deg(a) - db + 1;
  trim(a);
  while (!a.empty() && deg(a) >= db) {
    Poly la = a.back();
    int shift = deg(a) - db;
    for (auto& c : a) c *= lb;
    for (int i = 0; i <= db; ++i) a[static_cast<std::size_t>(i + shift)] -= la * b[static_cast<std::size_t>(i)];
    trim(a);
    --e;
  }
  if (e > 0) {
    Poly s = lb.pow(static_cast<unsigned>(e));
    for (auto& c : a) c *= s;
  }
  return a;
}

Poly exact(const Poly& f, const Poly& d) {
  auto q = f.divide_exact(d);
  if (!q) throw Error("internal: inexact division in gcd");
  return std::move(*q);
}

Poly gcd_impl(const Poly& f, const Poly& g, std::mt19937_64& rng);

Poly content_in(const UPoly& p, std::mt19937_64& rng) {
  Poly c;
  for (const auto& coeff : p) {
    c = gcd_impl(c, coeff, rng);
    if (c.is_constant() && !c.is_zero()) return Poly(1);
  }
  return c;
}

Poly gcd_of_all(const std::vector<const Poly*>& items, std::mt19937_64& rng) {
  Poly c;
  for (const Poly* p : items) {
    c = gcd_impl(c, *p, rng);
    if (c.is_constant() && !c.is_zero()) return Poly(1);
  }
  return c;
}

Poly subresultant_gcd(const Poly& f, const Poly& g, Var v, std::mt19937_64& rng) {
  UPoly a = f.coefficients_in(v);
  UPoly b = g.coefficients_in(v);
  if (deg(b) > deg(a)) std::swap(a, b);
  Poly ca = content_in(a, rng);
  Poly cb = content_in(b, rng);
  Poly d = gcd_impl(ca, cb, rng);
  for (auto& c : a) c = exact(c, ca);
  for (auto& c : b) c = exact(c, cb);

  Poly gg(1), h(1);
  while (true) {
    int delta = deg(a) - deg(b);
    UPoly r = prem(a, b);
    if (r.empty()) break;
    if (deg(r) == 0) {
      b = UPoly{Poly(1)};
      break;
    }
    a = std::move(b);
    Poly divisor = gg * h.pow(static_cast<unsigned>(delta));
    for (auto& c : r) c = exact(c, divisor);
    b = std::move(r);
    gg = a.back();
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = gg;
    } else {
      h = exact(gg.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
    }
  }
  Poly cbb = content_in(b, rng);
  for (auto& c : b) c = exact(c, cbb);
  return (d * Poly::from_coefficients(v, b)).primitive_integer();
}

Poly gcd_impl(const Poly& f, const Poly& g, std::mt19937_64& rng) {
  if (f.is_zero()) return g.primitive_integer();
  if (g.is_zero()) return f.primitive_integer();
  if (f.is_constant() || g.is_constant()) return Poly(1);

  const Poly fp = f.primitive_integer();
  const Poly gp = g.primitive_integer();
  if (fp == gp) return fp;
  if (fp.size() <= gp.size()) {
    if (auto q = gp.divide_exact(fp)) return fp;
  } else {
    if (auto q = fp.divide_exact(gp)) return gp;
  }

  const unsigned vf = fp.variables();
  const unsigned vg = gp.variables();

  // A variable present in only one argument cannot occur in the gcd.
  for (Var v : kAllVars) {
    unsigned bit = 1u << static_cast<unsigned>(v);
    if ((vf & bit) && !(vg & bit)) {
      auto cs = fp.coefficients_in(v);
      std::vector<const Poly*> items{&gp};
      for (const auto& c : cs) items.push_back(&c);
      return gcd_of_all(items, rng);
    }
    if ((vg & bit) && !(vf & bit)) {
      auto cs = gp.coefficients_in(v);
      std::vector<const Poly*> items{&fp};
      for (const auto& c : cs) items.push_back(&c);
      return gcd_of_all(items, rng);
    }
  }

  // Shared variables only. Bound the gcd degree in each of them.
  std::optional<Var> main;
  unsigned best = ~0u;
  bool all_zero = true;
  std::optional<Var> free_var;
  for (Var v : kAllVars) {
    if (!(vf & (1u << static_cast<unsigned>(v)))) continue;
    auto bound = degree_bound(fp, gp, v, rng);
    if (!bound) {
      all_zero = false;
      unsigned dm = std::max(fp.degree(v), gp.degree(v));
      if (dm < best) best = dm, main = v;
      continue;
    }
    if (*bound == 0) {
      free_var = v;
      continue;
    }
    all_zero = false;
    unsigned dm = std::max(fp.degree(v), gp.degree(v));
    if (dm < best) best = dm, main = v;
  }
  if (all_zero) return Poly(1);
  if (free_var) {
    auto cf = fp.coefficients_in(*free_var);
    auto cg = gp.coefficients_in(*free_var);
    std::vector<const Poly*> items;
    for (const auto& c : cf) items.push_back(&c);
    for (const auto& c : cg) items.push_back(&c);
    return gcd_of_all(items, rng);
  }
  return subresultant_gcd(fp, gp, *main, rng);
}

}  // namespace

Poly gcd(const Poly& f, const Poly& g) {
  if (f.is_zero() && g.is_zero()) return Poly();
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  return gcd_impl(f, g, rng);
}

}  // namespace appell
