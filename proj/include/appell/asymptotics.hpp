#pragma once

#include <optional>
#include <string>
#include <vector>

#include "appell/real.hpp"

namespace appell {

/// h(t) = log(t^p0 * prod (1 - u_i t)^p_i) on (0, 1).
struct PhaseFn {
  struct Factor {
    Rat u, p;
  };
  Rat p0;
  std::vector<Factor> factors;

  /// Phase of Example 2: t (1 - 80t/81)^-2 (1 - 16t/15)^4.
  static PhaseFn example2();
};

/// Coefficients (constant term first) of the numerator of h'(t) after clearing
/// t * prod (1 - u_i t).
std::vector<Rat> phase_derivative_numerator(const PhaseFn& ph);

/// Ball enclosure of h at t; throws DomainError where h is undefined.
Real phase_value(const PhaseFn& ph, const Real& t);
/// Ball enclosure of h'(t).
Real phase_derivative(const PhaseFn& ph, const Real& t);
/// Plain double evaluation for plotting; nullopt where h is undefined.
std::optional<double> phase_value_double(const PhaseFn& ph, double t);

struct CriticalPoint {
  Real t;
  Real h;
};

/// Roots of h' in (0, 1), isolated by Sturm counts on the exact numerator and
/// tightened by interval Newton. Throws DomainError for a root at a factor zero.
std::vector<CriticalPoint> critical_points(const PhaseFn& ph, const PrecCtx& ctx);

struct LimitSequence {
  std::vector<long> n;
  std::vector<Real> terms;
};

constexpr long kLaplaceMaxN = 200;

/// term(n) = (625/81)^n F1(1/4+n; 1/2+2n, -4n; 3/4+n; 80/81, 16/15), computed
/// on `jobs` threads.
LimitSequence laplace_sequence(const std::vector<long>& n_list, const PrecCtx& ctx, unsigned jobs = 1);

/// A(n) = (625/81)^n Gamma(3/4+n) / (Gamma(1/4+n) Gamma(1/2)).
Real laplace_a(long n, const PrecCtx& ctx);
/// B(n) as the Euler integral int t^(n-3/4) (1-t)^(-1/2) (1-80t/81)^(-1/2-2n) (1-16t/15)^(4n) dt.
Real laplace_b_quadrature(long n, const PrecCtx& ctx);

struct AsymptoticRow {
  long n;
  Real term, a, b;
  Real a_ratio;  // A / ((625/81)^n sqrt(n/pi))
  Real b_ratio;  // B / ((9/5) (81/625)^n sqrt(pi/n))
};

/// Requires n >= 4 for every entry.
std::vector<AsymptoticRow> asymptotic_forms_check(const std::vector<long>& n_list, const PrecCtx& ctx,
                                                  unsigned jobs = 1);
/// Same, reusing terms already computed; entries with n < 4 are skipped.
std::vector<AsymptoticRow> asymptotic_forms(const LimitSequence& seq, const PrecCtx& ctx);

struct Extrapolation {
  Real value;
  double error_estimate;  // heuristic, not rigorous
  bool rigorous = false;
};

/// Polynomial extrapolation in 1/n to 1/n = 0 (Neville); needs at least 3 terms.
Extrapolation richardson_extrapolate(const LimitSequence& seq);

/// n, term, A, B, A_ratio, B_ratio as CSV.
std::string asymptotic_table_csv(const std::vector<AsymptoticRow>& rows, long digits);
/// t, h(t) on a uniform grid of `samples` interior points.
std::string phase_samples_csv(const PhaseFn& ph, int samples);

}  // namespace appell
