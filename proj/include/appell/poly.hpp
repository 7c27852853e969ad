#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "appell/rational.hpp"

namespace appell {

/// The fixed variable set. Order here is the lexicographic tie-break order.
enum class Var : std::uint8_t { a = 0, b1, b2, c, x, y, n };
inline constexpr int kNumVars = 7;
inline constexpr std::array<Var, kNumVars> kAllVars{Var::a, Var::b1, Var::b2, Var::c, Var::x, Var::y, Var::n};

std::string_view var_name(Var v);
std::optional<Var> var_from_name(std::string_view name);

/// Exponent vector packed into one word: the top byte is the total degree,
/// then one byte per variable from `a` down to `n`. Comparing keys as
/// unsigned integers is exactly graded-lex order with a > b1 > ... > n.
class Monomial {
 public:
  constexpr Monomial() = default;
  static Monomial power(Var v, unsigned e);
  static constexpr Monomial from_key(std::uint64_t key) { return Monomial(key); }

  unsigned degree() const { return static_cast<unsigned>(key_ >> 56); }
  unsigned exponent(Var v) const { return static_cast<unsigned>((key_ >> shift(v)) & 0xffu); }
  std::uint64_t key() const { return key_; }
  bool is_one() const { return key_ == 0; }

  /// Checked product; throws DomainError on degree overflow (> 255).
  Monomial operator*(Monomial other) const;
  bool divides(Monomial other) const;
  /// Requires divides(other) reversed: *this must be divisible by `other`.
  Monomial operator/(Monomial other) const { return Monomial(key_ - other.key_); }
  Monomial without(Var v) const;

  friend bool operator==(Monomial l, Monomial r) { return l.key_ == r.key_; }
  friend auto operator<=>(Monomial l, Monomial r) { return l.key_ <=> r.key_; }

 private:
  friend class Poly;
  explicit constexpr Monomial(std::uint64_t key) : key_(key) {}
  static constexpr int shift(Var v) { return 8 * (6 - static_cast<int>(v)); }
  std::uint64_t key_ = 0;
};

struct Term {
  Monomial mono;
  Rat coeff;
};

using Assignment = std::array<std::optional<Rat>, kNumVars>;

/// Sparse multivariate polynomial over Q in the fixed variable set.
/// Terms are kept sorted by decreasing monomial; no zero coefficient is stored.
class Poly {
 public:
  Poly() = default;
  Poly(const Rat& constant);  // NOLINT(google-explicit-constructor)
  Poly(long constant) : Poly(Rat(constant)) {}  // NOLINT(google-explicit-constructor)
  static Poly variable(Var v);
  static Poly monomial(const Rat& coeff, Monomial m);
  /// Builds from arbitrary (unsorted, possibly repeated) terms.
  static Poly from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  Rat constant_value() const;  // requires is_constant()
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading() const { return terms_.front(); }
  unsigned total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }
  unsigned degree(Var v) const;
  /// Bit i set iff variable i occurs.
  unsigned variables() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rat& s);
  friend Poly operator+(Poly l, const Poly& r) { return l += r; }
  friend Poly operator-(Poly l, const Poly& r) { return l -= r; }
  friend Poly operator*(const Poly& l, const Poly& r);
  friend Poly operator*(Poly l, const Rat& s) { return l *= s; }
  friend bool operator==(const Poly& l, const Poly& r);

  Poly pow(unsigned e) const;

  /// Exact quotient if `divisor` divides *this, otherwise nullopt.
  std::optional<Poly> divide_exact(const Poly& divisor) const;

  /// Coefficients with respect to `v`: result[k] multiplies v^k (and is free of v).
  std::vector<Poly> coefficients_in(Var v) const;
  static Poly from_coefficients(Var v, const std::vector<Poly>& coeffs);

  Rat evaluate(const Assignment& point) const;
  /// Simultaneous substitution; unset entries keep their variable.
  Poly substitute(const std::array<std::optional<Poly>, kNumVars>& images) const;
  Poly substitute(Var v, const Poly& image) const;

  /// Rational c such that *this / c has coprime integer coefficients and a
  /// positive leading coefficient. Zero for the zero polynomial.
  Rat integer_content() const;
  /// *this scaled to primitive integer form with positive leading coefficient.
  Poly primitive_integer() const;

  /// Canonical text: expanded, terms in monomial order, e.g. "2*a^2-1/2*b1+3".
  std::string to_string() const;

 private:
  std::vector<Term> terms_;
  void add_scaled(const Poly& o, const Rat& s);
};

/// Greatest common divisor over Q, returned in primitive integer form with a
/// positive leading coefficient (gcd(0, 0) = 0; coprime inputs give 1).
Poly gcd(const Poly& f, const Poly& g);

}  // namespace appell
