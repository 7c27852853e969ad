#pragma once

#include <array>
#include <string>
#include <vector>

#include "appell/affine.hpp"
#include "appell/ratfunc.hpp"
#include "appell/real.hpp"

namespace appell {

/// Integer shift (k; l1, l2; m) applied to (alpha; beta1, beta2; gamma).
struct ShiftVec {
  long k = 0;
  long l1 = 0;
  long l2 = 0;
  long m = 0;
  friend bool operator==(const ShiftVec&, const ShiftVec&) = default;
};

ShiftVec operator+(const ShiftVec& u, const ShiftVec& v);
ShiftVec parse_shift(std::string_view text);  // "K,L1,L2,M"
std::string to_string(const ShiftVec& s);

/// Parameters and arguments of F1 as rational functions: fully symbolic
/// (a, b1, b2, c, x, y), specialized to a sextuple, or numeric constants.
struct F1Params {
  RatF alpha, beta1, beta2, gamma, x, y;
  static F1Params generic();
  F1Params shifted(const ShiftVec& s) const;
};

/// F1(p + k) = q10 F1(p + e10) + q01 F1(p + e01) + q00 F1(p),
/// with e10 = (1;1,0;1) and e01 = (1;0,1;1).
struct ContigRel {
  RatF q10, q01, q00;
  friend bool operator==(const ContigRel&, const ContigRel&) = default;
};

enum class Axis { gamma, alpha, beta1, beta2 };
using AxisOrder = std::array<Axis, 4>;
inline constexpr AxisOrder kDefaultOrder{Axis::gamma, Axis::alpha, Axis::beta1, Axis::beta2};

using Mat3 = std::array<std::array<RatF, 3>, 3>;
Mat3 operator*(const Mat3& l, const Mat3& r);

/// Transfer matrix T with (F, x F_x, y F_y) at base+k equal to T applied to the
/// same vector at base. Throws DivisionByZero if a step degenerates.
Mat3 transfer_matrix(const ShiftVec& k, const F1Params& base, const AxisOrder& order = kDefaultOrder);

/// Relation coefficients from the first row of a transfer matrix at `base`.
ContigRel relation_from_row(const std::array<RatF, 3>& row, const F1Params& base);

/// Four-term relation for shift k. Steps are taken one unit at a time along
/// `order`; if a step degenerates the remaining axis orders are tried.
ContigRel derive_contiguity(const ShiftVec& k, const F1Params& base = F1Params::generic(),
                            const AxisOrder& order = kDefaultOrder);

/// Substitutes concrete parameters into a relation derived over the generic symbols.
ContigRel specialize(const ContigRel& rel, const F1Params& at);

std::string to_string(const ContigRel& rel);

/// F1(p+k) - q10 F1(p+e10) - q01 F1(p+e01) - q00 F1(p) at a point assigning
/// a (alpha), b1, b2, c, x, y; contains 0 when the relation holds there.
/// Throws DomainError unless |x|, |y| < 1, DivisionByZero at a pole of a q.
Real numeric_four_term_check(const ContigRel& rel, const ShiftVec& k, const Assignment& point, const PrecCtx& ctx);

// ---------------------------------------------------------------------------
// Table 1 sextuples.

struct SextupleSpec {
  std::string id;
  Affine alpha, beta1, beta2, gamma;
  Rat x, y;
  ShiftVec shift;
  RatF ratio_expected;
  bool convergent_generic;
  /// a-values at which the ratio is checked numerically (both F(a0) and F(a0+1) evaluable).
  std::vector<Rat> sample_a;
  F1Params params() const;
};

const std::vector<SextupleSpec>& table1();
const SextupleSpec* find_sextuple(std::string_view id);

/// Q_ij with a -> a + n applied, as rational functions of (a, n).
struct ShiftedRel {
  RatF q10n, q01n, q00n;
};
ShiftedRel specialize_shift_n(const ContigRel& rel, const SextupleSpec& s);

struct CaseCheck {
  bool certified = false;       // q10n and q01n vanish identically in (a, n)
  bool ratio_matches = false;   // q00 at n = 0 equals the expected column exactly
  RatF ratio;
  ShiftedRel shifted;
};
CaseCheck check_case_vanishing(const SextupleSpec& s);

}  // namespace appell
