#pragma once

#include <string>
#include <string_view>

#include "appell/poly.hpp"

namespace appell {

/// Normalized rational function num/den over Q in the fixed variable set.
///
/// Canonical form: gcd(num, den) = 1, den has coprime integer coefficients and
/// a positive leading coefficient (graded-lex), zero is 0/1. Two RatF values
/// are equal as functions iff their stored forms are identical.
class RatF {
 public:
  RatF() : den_(1) {}
  RatF(const Rat& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatF(long c) : RatF(Rat(c)) {}              // NOLINT(google-explicit-constructor)
  RatF(const Poly& p) : num_(p), den_(1) { normalize_scale(); }  // NOLINT(google-explicit-constructor)
  /// num/den, reduced. Throws DivisionByZero when den is zero.
  RatF(const Poly& num, const Poly& den);
  static RatF variable(Var v) { return RatF(Poly::variable(v)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rat constant_value() const;
  unsigned variables() const { return num_.variables() | den_.variables(); }

  RatF operator-() const;
  friend RatF operator+(const RatF& f, const RatF& g);
  friend RatF operator-(const RatF& f, const RatF& g);
  friend RatF operator*(const RatF& f, const RatF& g);
  /// Throws DivisionByZero when g is the zero function.
  friend RatF operator/(const RatF& f, const RatF& g);
  RatF& operator+=(const RatF& g) { return *this = *this + g; }
  RatF& operator-=(const RatF& g) { return *this = *this - g; }
  RatF& operator*=(const RatF& g) { return *this = *this * g; }
  RatF& operator/=(const RatF& g) { return *this = *this / g; }
  friend bool operator==(const RatF& f, const RatF& g) { return f.num_ == g.num_ && f.den_ == g.den_; }

  /// Integer power; negative exponents invert.
  RatF pow(long e) const;

  /// Exact value at a point. Throws DomainError for an unassigned variable and
  /// DivisionByZero when the denominator vanishes there.
  Rat evaluate(const Assignment& point) const;
  /// Simultaneous polynomial substitution, renormalized.
  RatF substitute(const std::array<std::optional<Poly>, kNumVars>& images) const;

  /// "(num)/(den)", or just "num" when den = 1.
  std::string to_string() const;

 private:
  Poly num_;
  Poly den_;
  struct Raw {};
  RatF(Raw, Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {}
  void normalize_scale();
};

/// f with `var` replaced by `image` (e.g. a -> a + n*k), renormalized.
RatF ratf_shift(const RatF& f, Var var, const Poly& image);
/// True iff f is identically zero.
inline bool ratf_is_zero(const RatF& f) { return f.is_zero(); }
/// Rising factorial base*(base+1)*...*(base+count-1); count = 0 gives 1.
RatF pochhammer_symbolic(const Poly& base, unsigned count);

/// Parses an arithmetic expression over the fixed variables: + - * /, integer
/// powers '^', parentheses, rationals, and poch(expr, k) for rising factorials.
RatF parse_ratf(std::string_view text);

}  // namespace appell
