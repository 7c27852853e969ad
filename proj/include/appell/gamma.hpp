#pragma once

#include "appell/real.hpp"

namespace appell {

/// Enclosure of Gamma(z) at ctx.working_bits. Argument raising to a
/// precision-dependent threshold, then the Stirling series with its remainder
/// bounded by the first omitted term; arguments below 1/2 use reflection.
/// Throws DomainError if the ball meets a pole.
Real gamma_real(const Real& z, const PrecCtx& ctx);
Real gamma_rat(const Rat& q, const PrecCtx& ctx);
/// 1/Gamma(q), exactly zero at the poles.
Real rgamma_rat(const Rat& q, const PrecCtx& ctx);

/// Exact Bernoulli number B_{2n} (n >= 1).
Rat bernoulli_even(unsigned n);

}  // namespace appell
