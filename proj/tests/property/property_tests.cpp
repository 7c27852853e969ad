#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "appell/asymptotics.hpp"
#include "appell/closed_expr.hpp"
#include "appell/contiguity.hpp"
#include "appell/errors.hpp"
#include "appell/gamma.hpp"
#include "appell/hypergeom.hpp"
#include "appell/identity_db.hpp"
#include "appell/verifier.hpp"

using namespace appell;

namespace {

using Rng = std::mt19937_64;

long uniform(Rng& g, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }

Rat rand_rat(Rng& g, long lo, long hi, long max_den) {
  long d = uniform(g, 1, max_den);
  Rat r(uniform(g, lo * d, hi * d), d);
  r.canonicalize();
  return r;
}

Rat rand_open(Rng& g, const Rat& lo, const Rat& hi, long max_den) {
  for (;;) {
    long d = uniform(g, 2, max_den);
    Rat q(uniform(g, 0, d), d);
    q.canonicalize();
    Rat v = lo + (hi - lo) * q;
    if (v > lo && v < hi) return v;
  }
}

Poly rand_poly(Rng& g) {
  static const Var vars[] = {Var::a, Var::b1, Var::x};
  Poly p(rand_rat(g, -3, 3, 3));
  int terms = static_cast<int>(uniform(g, 1, 3));
  for (int i = 0; i < terms; ++i) {
    Poly t(rand_rat(g, -4, 4, 2));
    int deg = static_cast<int>(uniform(g, 1, 2));
    for (int j = 0; j < deg; ++j) t *= Poly::variable(vars[uniform(g, 0, 2)]);
    p += t;
  }
  return p;
}

RatF rand_ratf(Rng& g) {
  for (;;) {
    Poly d = rand_poly(g);
    if (!d.is_zero()) return RatF(rand_poly(g), d);
  }
}

const PrecCtx kCtx = PrecCtx::for_digits(40);

}  // namespace

TEST_SUITE("exact algebra") {
  TEST_CASE("ring laws on random rational functions") {
    Rng g(1001);
    for (int i = 0; i < 40; ++i) {
      RatF f = rand_ratf(g), h = rand_ratf(g), k = rand_ratf(g);
      CHECK(f + h == h + f);
      CHECK(f * h == h * f);
      CHECK((f + h) + k == f + (h + k));
      CHECK((f * h) * k == f * (h * k));
      CHECK(f * (h + k) == f * h + f * k);
      CHECK((f - f).is_zero());
      if (!h.is_zero()) CHECK((f / h) * h == f);
    }
  }

  TEST_CASE("normalization is idempotent and reduced") {
    Rng g(1002);
    for (int i = 0; i < 40; ++i) {
      RatF f = rand_ratf(g) * rand_ratf(g) + rand_ratf(g);
      CHECK(RatF(f.num(), f.den()) == f);
      CHECK(gcd(f.num(), f.den()).is_constant());
    }
  }

  TEST_CASE("evaluation commutes with shifts") {
    Rng g(1003);
    for (int i = 0; i < 30; ++i) {
      RatF f = rand_ratf(g);
      long k = uniform(g, -3, 3);
      Poly image = Poly::variable(Var::a) + Poly::variable(Var::n) * Poly(Rat(k));
      RatF s = ratf_shift(f, Var::a, image);
      Rat r = rand_rat(g, -5, 5, 7), n = rand_rat(g, -4, 4, 3), b1 = rand_rat(g, -3, 3, 5), x = rand_rat(g, -2, 2, 5);
      Assignment at_s{}, at_f{};
      at_s[static_cast<std::size_t>(Var::a)] = r;
      at_s[static_cast<std::size_t>(Var::n)] = n;
      at_f[static_cast<std::size_t>(Var::a)] = r + n * k;
      for (Assignment* p : {&at_s, &at_f}) {
        (*p)[static_cast<std::size_t>(Var::b1)] = b1;
        (*p)[static_cast<std::size_t>(Var::x)] = x;
      }
      try {
        Rat want = f.evaluate(at_f);
        CHECK(s.evaluate(at_s) == want);
      } catch (const DivisionByZero&) {
        CHECK_THROWS_AS(s.evaluate(at_s), DivisionByZero);
      }
    }
  }
}

TEST_SUITE("ball arithmetic") {
  TEST_CASE("exact rationals stay enclosed and refine") {
    Rng g(2001);
    for (int i = 0; i < 60; ++i) {
      Rat p = rand_rat(g, -20, 20, 97), q = rand_rat(g, -20, 20, 89);
      if (q == 0) continue;
      for (long bits : {64L, 128L}) {
        Real x = Real::from_rat(p, bits), y = Real::from_rat(q, bits);
        CHECK((x + y).contains(Rat(p + q)));
        CHECK((x - y).contains(Rat(p - q)));
        CHECK((x * y).contains(Rat(p * q)));
        CHECK((x / y).contains(Rat(p / q)));
      }
    }
  }

  TEST_CASE("higher precision refines transcendental results") {
    Rng g(2002);
    for (int i = 0; i < 30; ++i) {
      Rat p = rand_open(g, Rat(0), Rat(20), 50);
      Real lo = Real::from_rat(p, 96), hi = Real::from_rat(p, 192);
      CHECK(log(lo).overlaps(log(hi)));
      CHECK(exp(lo).overlaps(exp(hi)));
      CHECK(sqrt(lo).overlaps(sqrt(hi)));
      CHECK(cos(lo).overlaps(cos(hi)));
      CHECK(log(hi).rad_double() <= log(lo).rad_double());
      CHECK(exp(hi).rad_double() <= exp(lo).rad_double());
      Rat e = rand_rat(g, -3, 3, 4);
      CHECK(pow_rat(lo, e).overlaps(pow_rat(hi, e)));
    }
  }

  TEST_CASE("Gamma functional equations") {
    Rng g(2003);
    for (int i = 0; i < 25; ++i) {
      Rat z = rand_open(g, Rat(0), Rat(10), 40);
      Real lhs = gamma_rat(z + 1, kCtx);
      Real rhs = gamma_rat(z, kCtx).mul_rat(z);
      CHECK(lhs.overlaps(rhs));
      CHECK(lhs.radius_ok(35));

      Rat w = rand_open(g, Rat(0), Rat(1), 40);
      Real refl = gamma_rat(w, kCtx) * gamma_rat(1 - w, kCtx) * sin_pi(w, kCtx.working_bits) / pi(kCtx.working_bits);
      CHECK(refl.contains(Rat(1)));

      Rat x = rand_open(g, Rat(0), Rat(6), 30);
      unsigned long n = static_cast<unsigned long>(uniform(g, 0, 20));
      Real poch = pochhammer_num(Real::from_rat(x, kCtx.working_bits), n);
      CHECK(poch.overlaps(gamma_rat(x + static_cast<long>(n), kCtx) / gamma_rat(x, kCtx)));
    }
  }
}

TEST_SUITE("hypergeometric evaluation") {
  TEST_CASE("tail bounds are sound") {
    Rng g(3001);
    for (int i = 0; i < 25; ++i) {
      Params2F1 p{rand_rat(g, -3, 3, 6), rand_rat(g, -3, 3, 6), rand_open(g, Rat(0), Rat(4), 6)};
      Rat x = rand_open(g, Rat(-9, 10), Rat(9, 10), 20);
      Mpfr loose(64), tight(64);
      mpfr_set_str(loose.get(), "1e-8", 10, MPFR_RNDN);
      mpfr_set_str(tight.get(), "1e-45", 10, MPFR_RNDN);
      Real coarse = eval_2f1_series(p, x, kCtx, loose).value;
      Real fine = eval_2f1_series(p, x, kCtx.with_bits(kCtx.working_bits * 2), tight).value;
      CHECK(coarse.overlaps(fine));
      CHECK(coarse.contains(Real::from_mid_rad(fine.mid(), Mpfr(64), kCtx.working_bits * 2)));
    }
  }

  TEST_CASE("F1 symmetry and the beta2 = 0 reduction") {
    Rng g(3002);
    for (int i = 0; i < 12; ++i) {
      ParamsF1 p{rand_rat(g, -2, 2, 5), rand_rat(g, -2, 2, 5), rand_rat(g, -2, 2, 5), rand_open(g, Rat(0), Rat(3), 5)};
      Rat x = rand_open(g, Rat(-1, 2), Rat(1, 2), 10), y = rand_open(g, Rat(-1, 2), Rat(1, 2), 10);
      Real f = eval_f1_double_series(p, x, y, kCtx).value;
      Real s = eval_f1_double_series({p.alpha, p.beta2, p.beta1, p.gamma}, y, x, kCtx).value;
      CHECK(f.overlaps(s));
      CHECK(f.radius_ok(38));

      ParamsF1 z{p.alpha, p.beta1, Rat(0), p.gamma};
      Real red = eval_f1_double_series(z, x, y, kCtx).value;
      Real two = eval_2f1_series(f1_reduce_beta_zero(z), x, kCtx).value;
      CHECK(red.overlaps(two));
    }
  }

  TEST_CASE("series, terminating and integral routes agree") {
    Rng g(3003);
    for (int i = 0; i < 8; ++i) {
      Rat al = rand_open(g, Rat(0), Rat(2), 6);
      ParamsF1 p{al, rand_rat(g, -2, 2, 4), Rat(-uniform(g, 0, 4)), al + rand_open(g, Rat(0), Rat(2), 6)};
      Rat x = rand_open(g, Rat(-1, 2), Rat(1, 2), 10), y = rand_open(g, Rat(-1, 2), Rat(1, 2), 10);
      const PrecCtx c = PrecCtx::for_digits(25);
      Real s = eval_f1(p, x, y, c, F1Method::series).value;
      Real t = eval_f1(p, x, y, c, F1Method::terminating).value;
      Real q = eval_f1(p, x, y, c, F1Method::integral).value;
      CHECK(s.overlaps(t));
      CHECK(s.overlaps(q));
    }
  }

  TEST_CASE("series near 1 approaches the Gauss sum") {
    Rng g(3004);
    for (int i = 0; i < 4; ++i) {
      Rat a = rand_open(g, Rat(0), Rat(1), 4), b = rand_open(g, Rat(0), Rat(1), 4);
      Params2F1 p{a, b, a + b + Rat(1, 2) + rand_open(g, Rat(0), Rat(1), 4)};
      const PrecCtx c = PrecCtx::for_digits(15);
      Real gs = gauss_sum(p, c);
      double last = 1e300;
      for (int j : {2, 4, 6, 8}) {
        Rat x = 1 - Rat(1, 1L << j);
        double d = std::fabs((eval_2f1_series(p, x, c).value - gs).mid_double());
        CHECK(d < last);
        last = d;
      }
    }
  }

  TEST_CASE("quadratic transformation preserves values") {
    Rng g(3005);
    for (int i = 0; i < 15; ++i) {
      Rat b = rand_open(g, Rat(0), Rat(3), 6);
      Params2F1 p{rand_rat(g, -2, 2, 6), b, 2 * b};
      Rat x = rand_open(g, Rat(-1, 2), Rat(1, 2), 12);
      Goursat45 t = goursat45_transform(p, x);
      Real lhs = eval_2f1(p, x, kCtx).value;
      Real rhs = t.prefactor(x, kCtx) * eval_2f1(t.params, t.x_new, kCtx).value;
      CHECK(lhs.overlaps(rhs));
    }
  }
}

TEST_SUITE("contiguity") {
  TEST_CASE("relations do not depend on the axis order") {
    Rng g(4001);
    AxisOrder orders[] = {kDefaultOrder,
                          {Axis::beta2, Axis::beta1, Axis::alpha, Axis::gamma},
                          {Axis::alpha, Axis::gamma, Axis::beta2, Axis::beta1}};
    for (int i = 0; i < 6; ++i) {
      ShiftVec k{uniform(g, -1, 1), uniform(g, -1, 1), uniform(g, -1, 1), uniform(g, -1, 1)};
      ContigRel first = derive_contiguity(k, F1Params::generic(), orders[0]);
      for (const auto& o : orders) CHECK(derive_contiguity(k, F1Params::generic(), o) == first);
    }
  }

  TEST_CASE("transfer matrices compose") {
    Rng g(4002);
    for (int i = 0; i < 6; ++i) {
      ShiftVec k1{uniform(g, -1, 1), uniform(g, -1, 1), uniform(g, -1, 1), uniform(g, -1, 1)};
      ShiftVec k2{uniform(g, -1, 1), uniform(g, -1, 1), uniform(g, -1, 1), uniform(g, -1, 1)};
      F1Params base = F1Params::generic();
      Mat3 direct = transfer_matrix(k1 + k2, base);
      Mat3 composed = transfer_matrix(k2, base.shifted(k1)) * transfer_matrix(k1, base);
      CHECK(direct == composed);
    }
  }

  TEST_CASE("four-term residuals contain zero") {
    Rng g(4003);
    const PrecCtx c = PrecCtx::for_digits(50);
    int done = 0;
    while (done < 20) {
      ShiftVec k{uniform(g, -3, 3), uniform(g, -3, 3), uniform(g, -3, 3), uniform(g, -3, 3)};
      Assignment pt{};
      pt[static_cast<std::size_t>(Var::a)] = rand_rat(g, -2, 3, 7);
      pt[static_cast<std::size_t>(Var::b1)] = rand_rat(g, -2, 3, 7);
      pt[static_cast<std::size_t>(Var::b2)] = rand_rat(g, -2, 3, 7);
      pt[static_cast<std::size_t>(Var::c)] = rand_open(g, Rat(3), Rat(6), 7);
      pt[static_cast<std::size_t>(Var::x)] = rand_open(g, Rat(-1, 2), Rat(1, 2), 11);
      pt[static_cast<std::size_t>(Var::y)] = rand_open(g, Rat(-1, 2), Rat(1, 2), 11);
      F1Params base = F1Params::generic();
      base.x = RatF(*pt[static_cast<std::size_t>(Var::x)]);
      base.y = RatF(*pt[static_cast<std::size_t>(Var::y)]);
      Real r;
      try {
        r = numeric_four_term_check(derive_contiguity(k, base), k, pt, c);
      } catch (const DivisionByZero&) {
        continue;
      }
      CHECK_MESSAGE(r.contains(Rat(0)), to_string(k));
      CHECK(r.radius_below_pow10(40));
      ++done;
    }
  }

  TEST_CASE("trivial relation has zero residual") {
    Assignment pt{};
    for (auto [v, q] : {std::pair{Var::a, Rat(1, 3)}, {Var::b1, Rat(1, 5)}, {Var::b2, Rat(1, 7)}, {Var::c, Rat(3, 2)},
                        {Var::x, Rat(1, 10)}, {Var::y, Rat(1, 11)}})
      pt[static_cast<std::size_t>(v)] = q;
    ContigRel e10{RatF(1), RatF(0), RatF(0)};
    CHECK(numeric_four_term_check(e10, {1, 1, 0, 1}, pt, kCtx).contains(Rat(0)));
    pt[static_cast<std::size_t>(Var::x)] = Rat(3, 2);
    CHECK_THROWS_AS(numeric_four_term_check(e10, {1, 1, 0, 1}, pt, kCtx), DomainError);
  }
}

namespace {

Affine rand_affine(Rng& g) { return {Rat(uniform(g, -2, 2)), rand_rat(g, -3, 3, 4)}; }

ClosedExpr rand_expr(Rng& g, int depth) {
  long pick = uniform(g, 0, depth <= 0 ? 4 : 11);
  switch (pick) {
    case 0:
      return ClosedExpr::literal(rand_rat(g, -9, 9, 5));
    case 1:
      return ClosedExpr::pi();
    case 2:
      return ClosedExpr::symbol();
    case 3:
      return ClosedExpr::gamma(rand_affine(g));
    case 4:
      return ClosedExpr::cos_pi(rand_affine(g));
    case 5:
      return ClosedExpr::sqrt(rand_expr(g, depth - 1));
    case 6:
      return ClosedExpr::pow(rand_expr(g, depth - 1), rand_affine(g));
    case 7:
      return ClosedExpr::neg(rand_expr(g, depth - 1));
    case 8:
      return ClosedExpr::binary(ClosedExpr::Kind::add, rand_expr(g, depth - 1), rand_expr(g, depth - 1));
    case 9:
      return ClosedExpr::binary(ClosedExpr::Kind::sub, rand_expr(g, depth - 1), rand_expr(g, depth - 1));
    case 10:
      return ClosedExpr::binary(ClosedExpr::Kind::mul, rand_expr(g, depth - 1), rand_expr(g, depth - 1));
    default:
      return ClosedExpr::binary(ClosedExpr::Kind::div, rand_expr(g, depth - 1), rand_expr(g, depth - 1));
  }
}

std::optional<Real> try_eval(const ClosedExpr& e, const Rat& a) {
  try {
    return eval_expr(e, a, PrecCtx::for_digits(30));
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

}  // namespace

TEST_SUITE("closed forms") {
  TEST_CASE("printing round trips on random trees") {
    Rng g(5001);
    for (int i = 0; i < 200; ++i) {
      ClosedExpr e = rand_expr(g, 4);
      std::string s1 = print_expr(e);
      INFO(s1);
      ClosedExpr back = parse_expr(s1);
      std::string s2 = print_expr(back);
      CHECK_MESSAGE(print_expr(parse_expr(s2)) == s2, s1);
      Rat a = rand_rat(g, -2, 2, 7);
      auto v1 = try_eval(e, a), v2 = try_eval(back, a);
      if (v1 && v2) CHECK_MESSAGE(v1->overlaps(*v2), s1);
    }
  }

  TEST_CASE("non-affine Gamma arguments are rejected") {
    Rng g(5002);
    const char* shapes[] = {"Gamma(a^%d)", "Gamma(a*a+%d)", "Gamma(%d/a)", "Gamma(sqrt(a)+%d)", "Gamma(a*%d*a)",
                            "Gamma(Gamma(a)+%d)", "Gamma(pi*a+%d)", "2^(a^%d)"};
    for (int i = 0; i < 80; ++i) {
      char buf[64];
      std::snprintf(buf, sizeof buf, shapes[uniform(g, 0, 7)], static_cast<int>(uniform(g, 1, 9)));
      CHECK_THROWS_AS_MESSAGE(parse_expr(buf), ParseError, buf);
    }
  }

  TEST_CASE("bundled right-hand sides refine with precision") {
    for (const auto& r : load_identity_table(default_identity_table_path())) {
      if (exact_value(r.rhs, r.a_value())) continue;
      Real lo = eval_expr(r.rhs, r.a_value(), PrecCtx::for_digits(30));
      Real hi = eval_expr(r.rhs, r.a_value(), PrecCtx::for_digits(30).with_bits(PrecCtx::for_digits(30).working_bits * 2));
      CHECK_MESSAGE(hi.rad_double() < lo.rad_double(), r.id);
      CHECK_MESSAGE(lo.overlaps(hi), r.id);
    }
  }
}

TEST_SUITE("asymptotics and verification") {
  TEST_CASE("critical points of random phases are zeros of h'") {
    Rng g(6001);
    int found = 0;
    for (int i = 0; i < 30; ++i) {
      PhaseFn ph{rand_open(g, Rat(0), Rat(3), 4), {}};
      int nf = static_cast<int>(uniform(g, 1, 3));
      for (int j = 0; j < nf; ++j) {
        bool big = uniform(g, 0, 1) == 1;
        ph.factors.push_back(big ? PhaseFn::Factor{rand_open(g, Rat(1), Rat(3), 6), Rat(uniform(g, 1, 4))}
                                 : PhaseFn::Factor{rand_open(g, Rat(-2), Rat(1), 6), rand_rat(g, -4, 4, 3)});
      }
      std::vector<CriticalPoint> cps;
      try {
        cps = critical_points(ph, kCtx);
      } catch (const DomainError&) {
        continue;
      }
      for (const auto& cp : cps) {
        CHECK(phase_derivative(ph, cp.t).contains_zero());
        ++found;
      }
    }
    CHECK(found > 5);
  }

  TEST_CASE("asymptotic ratios approach 1") {
    auto rows = asymptotic_forms_check({8, 16, 32}, PrecCtx::for_digits(30));
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(std::fabs(rows[i].a_ratio.mid_double() - 1) < std::fabs(rows[i - 1].a_ratio.mid_double() - 1));
      CHECK(std::fabs(rows[i].b_ratio.mid_double() - 1) < std::fabs(rows[i - 1].b_ratio.mid_double() - 1));
    }
  }

  TEST_CASE("records passing at d digits pass at d + 10") {
    Rng g(6002);
    auto db = load_identity_table(default_identity_table_path());
    std::shuffle(db.begin(), db.end(), g);
    for (std::size_t i = 0; i < 8 && i < db.size(); ++i) {
      VerifyRow lo = verify_identity(db[i], PrecCtx::for_digits(30));
      if (lo.verdict != Verdict::pass && lo.verdict != Verdict::conjectural_pass) continue;
      VerifyRow hi = verify_identity(db[i], PrecCtx::for_digits(40));
      CHECK_MESSAGE(hi.verdict == lo.verdict, db[i].id);
    }
  }
}
