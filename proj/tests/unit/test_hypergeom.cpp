#include <doctest.h>

#include "appell/errors.hpp"
#include "appell/euler_integral.hpp"
#include "appell/gamma.hpp"
#include "appell/hypergeom.hpp"

using namespace appell;

namespace {
const PrecCtx ctx = PrecCtx::for_digits(40);

bool agree(const Real& a, const Real& b) { return a.overlaps(b) && a.radius_ok(35) && b.radius_ok(35); }

Real rat(const Rat& q) { return Real::from_rat(q, ctx.working_bits + 64); }
}  // namespace

TEST_CASE("2F1 series at rational points") {
  EvalResult r = eval_2f1({Rat(1, 4), Rat(1, 2), Rat(3, 4)}, Rat(80, 81), ctx);
  CHECK(r.value.contains(Rat(9, 5)));
  CHECK(r.value.radius_ok(40));

  EvalResult t = eval_2f1({Rat(1, 2), Rat(-1), Rat(9, 2)}, Rat(1, 4), ctx);
  CHECK(t.method == Method::terminating);
  CHECK(t.value.contains(Rat(35, 36)));
  CHECK(t.terms_used == 2);

  // 2F1(1,1;2;x) = -log(1-x)/x.
  EvalResult l = eval_2f1({Rat(1), Rat(1), Rat(2)}, Rat(1, 2), ctx);
  Real oracle = log(rat(Rat(2))).mul_si(2);
  CHECK(agree(l.value, oracle));

  CHECK_THROWS_AS(eval_2f1_series({Rat(1, 3), Rat(1, 2), Rat(1)}, Rat(3, 2), ctx), DomainError);
  CHECK_THROWS_AS(eval_2f1_series({Rat(1, 3), Rat(1, 2), Rat(-2)}, Rat(1, 2), ctx), DomainError);
}

TEST_CASE("Gauss summation") {
  CHECK(gauss_sum({Rat(1), Rat(1), Rat(3)}, ctx).contains(Rat(2)));
  Real g = gauss_sum({Rat(1, 2), Rat(3, 4), Rat(2)}, ctx);
  CHECK(g.to_string(6).rfind("1.52552", 0) == 0);
  // Independent oracle: MPFR's Gamma.
  long wp = ctx.working_bits + 64;
  Mpfr ga(wp), gb(wp), gc(wp), x(wp);
  mpfr_set_d(x.get(), 0.75, MPFR_RNDN);
  mpfr_gamma(ga.get(), x.get(), MPFR_RNDN);
  mpfr_set_d(x.get(), 1.5, MPFR_RNDN);
  mpfr_gamma(gb.get(), x.get(), MPFR_RNDN);
  mpfr_set_d(x.get(), 1.25, MPFR_RNDN);
  mpfr_gamma(gc.get(), x.get(), MPFR_RNDN);
  mpfr_mul(gb.get(), gb.get(), gc.get(), MPFR_RNDN);
  mpfr_div(ga.get(), ga.get(), gb.get(), MPFR_RNDN);
  Mpfr rad(64);
  mpfr_set_ui_2exp(rad.get(), 1, -(wp - 8), MPFR_RNDU);
  CHECK(agree(g, Real::from_mid_rad(ga, rad, wp)));
  CHECK_THROWS_AS(gauss_sum({Rat(1, 2), Rat(1, 2), Rat(1)}, ctx), DomainError);
  CHECK(eval_2f1({Rat(1, 2), Rat(3, 4), Rat(2)}, Rat(1), ctx).method == Method::gauss);
}

TEST_CASE("connection formula against the direct series") {
  Params2F1 p{Rat(1, 3), Rat(2, 3), Rat(7, 6)};
  Real a = eval_2f1_connection(p, Rat(5, 32), ctx).value;
  Real b = eval_2f1_series(p, Rat(5, 32), ctx).value;
  CHECK(agree(a, b));

  Params2F1 q{Rat(1, 5), Rat(1, 7), Rat(9, 5)};
  Real c = eval_2f1_connection(q, Rat(9, 10), ctx).value;
  Real d = eval_2f1_series(q, Rat(9, 10), ctx).value;
  CHECK(agree(c, d));

  CHECK_THROWS_AS(eval_2f1_connection({Rat(1, 2), Rat(1, 2), Rat(2)}, Rat(1, 2), ctx), DomainError);
}

TEST_CASE("Pfaff route for negative arguments") {
  // 2F1(1,1;2;x) = -log(1-x)/x at x = -3.
  EvalResult r = eval_2f1({Rat(1), Rat(1), Rat(2)}, Rat(-3), ctx);
  Real oracle = log(rat(Rat(4))) / rat(Rat(3));
  CHECK(agree(r.value, oracle));
}

TEST_CASE("quadratic transformation") {
  Goursat45 g = goursat45_transform({Rat(3, 4), Rat(1, 2), Rat(1)}, Rat(1, 81));
  CHECK(g.params.a == Rat(1, 8));
  CHECK(g.params.b == Rat(5, 8));
  CHECK(g.params.c == Rat(1));
  CHECK(g.x_new == Rat(1, 25921));

  Params2F1 p{Rat(1, 3), Rat(1, 4), Rat(1, 2)};
  Rat x(1, 10);
  Goursat45 h = goursat45_transform(p, x);
  Real lhs = eval_2f1(p, x, ctx).value;
  Real rhs = h.prefactor(x, ctx) * eval_2f1(h.params, h.x_new, ctx).value;
  CHECK(agree(lhs, rhs));

  CHECK_THROWS_AS(goursat45_transform({Rat(1, 3), Rat(1, 4), Rat(1)}, x), DomainError);
}

TEST_CASE("F1 trivial and symmetric cases") {
  ParamsF1 p{Rat(0), Rat(1, 3), Rat(2, 5), Rat(7, 3)};
  CHECK(eval_f1(p, Rat(1, 2), Rat(1, 3), ctx).value.contains(Rat(1)));

  ParamsF1 q{Rat(1, 3), Rat(1, 2), Rat(1, 5), Rat(7, 4)};
  Real a = eval_f1_double_series(q, Rat(1, 3), Rat(1, 7), ctx).value;
  Real b = eval_f1_double_series({q.alpha, q.beta2, q.beta1, q.gamma}, Rat(1, 7), Rat(1, 3), ctx).value;
  CHECK(agree(a, b));

  // F1 with x = y collapses to 2F1(al, b1+b2; g; x).
  Real c = eval_f1_double_series(q, Rat(1, 4), Rat(1, 4), ctx).value;
  Real d = eval_2f1({q.alpha, q.beta1 + q.beta2, q.gamma}, Rat(1, 4), ctx).value;
  CHECK(agree(c, d));

  Params2F1 r = f1_reduce_beta_zero({Rat(1, 4), Rat(1, 2), Rat(0), Rat(3, 4)});
  CHECK(r.a == Rat(1, 4));
  CHECK(r.b == Rat(1, 2));
  CHECK(r.c == Rat(3, 4));
  CHECK_THROWS_AS(f1_reduce_beta_zero(q), DomainError);
}

TEST_CASE("F1 double series against a closed form") {
  // F1(2a; a+1/2, 4a-1; 2a+1/2; 1/81, 1/6) at a = 1/3.
  ParamsF1 p{Rat(2, 3), Rat(5, 6), Rat(1, 3), Rat(7, 6)};
  EvalResult r = eval_f1(p, Rat(1, 81), Rat(1, 6), ctx);
  CHECK(r.method == Method::double_series);
  long wp = ctx.working_bits + 64;
  PrecCtx g = ctx.with_bits(wp);
  Real rhs = pow_rat(rat(Rat(3)), Rat(8, 3)) / (pow_rat(rat(Rat(2)), Rat(2, 3)) * pow_rat(rat(Rat(5)), Rat(5, 3)));
  Real g56 = gamma_rat(Rat(5, 6), g);
  rhs = rhs * sqrt(pi(wp)) * gamma_rat(Rat(7, 6), g) / (g56 * g56);
  CHECK(agree(r.value, rhs));
}

TEST_CASE("F1 terminating sums") {
  ParamsF1 p{Rat(1, 4), Rat(1, 2), Rat(0), Rat(3, 4)};
  CHECK(eval_f1(p, Rat(80, 81), Rat(16, 15), ctx).value.contains(Rat(9, 5)));
  ParamsF1 q{Rat(5, 4), Rat(5, 2), Rat(-4), Rat(7, 4)};
  EvalResult r = eval_f1(q, Rat(80, 81), Rat(16, 15), ctx);
  CHECK(r.method == Method::terminating);
  CHECK(r.value.contains(Rat(729, 3125)));
  CHECK(r.value.radius_ok(40));
  CHECK_THROWS_AS(eval_f1_terminating({Rat(1, 3), Rat(1, 2), Rat(1, 5), Rat(2)}, Rat(1, 2), Rat(1, 3), ctx),
                  DomainError);
}

TEST_CASE("Euler integral quadrature") {
  // Beta integral: int t^(1/2) (1-t)^(-1/2) = B(3/2, 1/2) = pi/2.
  EulerIntegrand beta{Rat(1, 2), Rat(-1, 2), {}};
  Real b = integrate_euler(beta, ctx);
  CHECK(agree(b, pi(ctx.working_bits + 64).div_si(2)));

  // Polynomial factor with a sign change inside the interval: int (1 - 3t)^3 = ((-2)^4 - 1) / (-12).
  EulerIntegrand poly{Rat(0), Rat(0), {{Rat(1), Rat(-3), Rat(3)}}};
  CHECK(integrate_euler(poly, ctx).contains(Rat(-5, 4)));

  ParamsF1 p{Rat(1, 3), Rat(1, 2), Rat(1, 5), Rat(7, 4)};
  CHECK(eval_f1_integral(p, Rat(0), Rat(0), ctx).value.contains(Rat(1)));
  CHECK(agree(eval_f1_integral(p, Rat(0), Rat(0), ctx).value, rat(Rat(1))));
  Real i = eval_f1_integral(p, Rat(1, 3), Rat(1, 7), ctx).value;
  Real s = eval_f1_double_series(p, Rat(1, 3), Rat(1, 7), ctx).value;
  CHECK(agree(i, s));

  CHECK_THROWS_AS(eval_f1_integral({Rat(1, 3), Rat(1, 2), Rat(1, 5), Rat(1, 4)}, Rat(0), Rat(0), ctx), DomainError);
}

TEST_CASE("Euler integral outside the unit bidisc") {
  // F1(1/2; 1, 1/2; 5/2; -25/2, 5/32) = (27/2)^(-1/2) F1(1/2; 1, 1/2; 5/2; 25/27, 15/16).
  ParamsF1 p{Rat(1, 2), Rat(1), Rat(1, 2), Rat(5, 2)};
  EvalResult r = eval_f1(p, Rat(-25, 2), Rat(5, 32), ctx);
  CHECK(r.method == Method::integral);
  Real t = eval_f1_double_series(p, Rat(25, 27), Rat(15, 16), ctx).value;
  Real oracle = t / sqrt(rat(Rat(27, 2)));
  CHECK(agree(r.value, oracle));
  CHECK_FALSE(f1_evaluable(p, Rat(3, 2), Rat(2)));
  CHECK_THROWS_AS(eval_f1(p, Rat(3, 2), Rat(2), ctx), DomainError);
}
