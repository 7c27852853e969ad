#pragma once

#include <vector>

#include "appell/real.hpp"

namespace appell {

/// (b0 + b1 t)^e
struct LinearFactor {
  Rat b0, b1, e;
};

/// t^p (1 - t)^q times a product of linear factors, integrated over [0, 1].
/// Requires p, q > -1. A factor with a root in [0, 1] must have a nonnegative
/// integer exponent (it is then a polynomial and may change sign).
struct EulerIntegrand {
  Rat p, q;
  std::vector<LinearFactor> factors;
};

struct QuadratureStats {
  long pieces = 0;
  long max_terms = 0;
  long bits = 0;
};

/// Validated quadrature: power series with the endpoint powers pulled out on
/// [0, d0] and [1 - d1, 1], Taylor models with Cauchy tail bounds on a graded
/// partition of the interior. Raises working bits until the radius is at most
/// 10^(-target_digits) relative to the value (bounded number of retries).
Real integrate_euler(const EulerIntegrand& f, const PrecCtx& ctx, QuadratureStats* stats = nullptr);

}  // namespace appell
