#pragma once

#include <optional>
#include <string>

#include "appell/real.hpp"

namespace appell {

enum class Method { series, double_series, terminating, integral, gauss, connection };
std::string to_string(Method m);

struct EvalResult {
  Real value;
  long terms_used = 0;
  Method method = Method::series;
};

struct Params2F1 {
  Rat a, b, c;
};

struct ParamsF1 {
  Rat alpha, beta1, beta2, gamma;
};

/// Truncated 2F1 series. Stops once a certified geometric bound on the tail is
/// below `abs_tol` (default 10^(-digits-5) * max(1, |partial sum|)).
/// Requires |x| < 1 unless the series terminates.
EvalResult eval_2f1_series(const Params2F1& p, const Rat& x, const PrecCtx& ctx,
                           const std::optional<Mpfr>& abs_tol = std::nullopt);

/// Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)); requires c - a - b > 0.
Real gauss_sum(const Params2F1& p, const PrecCtx& ctx);

/// 2F1 at x through the two series at 1 - x. Requires |1 - x| < 1 and c - a - b not an integer.
EvalResult eval_2f1_connection(const Params2F1& p, const Rat& x, const PrecCtx& ctx);

/// Picks terminating / series / connection / Gauss at x = 1 and retries with
/// more working bits until the radius meets the target.
EvalResult eval_2f1(const Params2F1& p, const Rat& x, const PrecCtx& ctx);

/// Quadratic transformation
/// F(a,b;2b;x) = (1-x)^(b-a) (1-x/2)^(a-2b) F(b-a/2, b+1/2-a/2; b+1/2; (x/(2-x))^2).
struct Goursat45 {
  Rat exponent_1mx;     // b - a, on (1 - x)
  Rat exponent_1mx2;    // a - 2b, on (1 - x/2)
  Params2F1 params;     // transformed parameters
  Rat x_new;            // (x / (2 - x))^2
  Real prefactor(const Rat& x, const PrecCtx& ctx) const;
};
/// Throws DomainError when p.c != 2 p.b or x == 2.
Goursat45 goursat45_transform(const Params2F1& p, const Rat& x);

/// Double series, with the outer sum over the smaller of |x|, |y|. Requires |x|, |y| < 1.
EvalResult eval_f1_double_series(const ParamsF1& p, const Rat& x, const Rat& y, const PrecCtx& ctx);

/// Finite sum over the terminating direction (beta2, or beta1 after the symmetry
/// swap, a nonpositive integer) of 2F1 values in the other variable, which must
/// lie in (-1, 1). Retries with more working bits when cancellation eats the target.
EvalResult eval_f1_terminating(const ParamsF1& p, const Rat& x, const Rat& y, const PrecCtx& ctx);

/// Euler integral Gamma(g)/(Gamma(al)Gamma(g-al)) * int_0^1 t^(al-1)(1-t)^(g-al-1)(1-xt)^(-b1)(1-yt)^(-b2) dt.
/// Requires g > al > 0 and no non-integer-power zero of (1-xt), (1-yt) in [0, 1].
EvalResult eval_f1_integral(const ParamsF1& p, const Rat& x, const Rat& y, const PrecCtx& ctx);

enum class F1Method { automatic, series, terminating, integral };
/// Route order for automatic: terminating, double series, integral.
/// Throws DomainError when no route applies.
EvalResult eval_f1(const ParamsF1& p, const Rat& x, const Rat& y, const PrecCtx& ctx,
                   F1Method method = F1Method::automatic);

/// F1(al; b1, 0; g; x, y) = 2F1(al, b1; g; x). Throws DomainError if beta2 != 0.
Params2F1 f1_reduce_beta_zero(const ParamsF1& p);
/// True if at least one route of eval_f1 applies.
bool f1_evaluable(const ParamsF1& p, const Rat& x, const Rat& y);

}  // namespace appell
