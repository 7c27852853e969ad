#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "appell/affine.hpp"
#include "appell/real.hpp"

namespace appell {

/// Closed-form right-hand sides: rationals, pi, the symbol a, sqrt, Gamma and
/// cos(pi*...) of affine arguments, powers with affine exponents, + - * / and negation.
class ClosedExpr {
 public:
  enum class Kind { literal, pi, symbol, sqrt, gamma, cos_pi, pow, neg, add, sub, mul, div };

  static ClosedExpr literal(const Rat& q);
  static ClosedExpr pi();
  static ClosedExpr symbol();
  static ClosedExpr sqrt(ClosedExpr e);
  static ClosedExpr gamma(const Affine& arg);
  static ClosedExpr cos_pi(const Affine& arg);
  static ClosedExpr pow(ClosedExpr base, const Affine& exponent);
  static ClosedExpr neg(ClosedExpr e);
  static ClosedExpr binary(Kind k, ClosedExpr l, ClosedExpr r);

  Kind kind() const { return node_->kind; }
  const Rat& value() const { return node_->value; }
  const Affine& affine() const { return node_->affine; }
  const ClosedExpr& child(std::size_t i) const { return node_->children.at(i); }
  std::size_t arity() const { return node_->children.size(); }

  /// True if a occurs anywhere (symbol, Gamma/cos argument or exponent).
  bool depends_on_a() const;

 private:
  struct Node {
    Kind kind;
    Rat value;
    Affine affine{0, 0};
    std::vector<ClosedExpr> children;
  };
  explicit ClosedExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Grammar:
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ['^' exponent]
///   base   := int | 'pi' | 'a' | 'sqrt' '(' expr ')' | 'Gamma' '(' affine ')'
///           | 'cos' '(' 'pi' '*' affine ')' | '(' expr ')'
///   exponent := int | '(' affine ')'
/// int/int of two literals folds to a rational literal.
ClosedExpr parse_expr(std::string_view text);

/// Normalized text; parse_expr(print_expr(e)) prints identically.
std::string print_expr(const ClosedExpr& e);

/// Exact value when the tree is rational at a (no pi, Gamma, roots).
std::optional<Rat> exact_value(const ClosedExpr& e, const Rat& a);

/// Enclosure at a. Throws DomainError at a Gamma pole, for a negative base
/// with non-integer exponent, or sqrt of a negative quantity.
Real eval_expr(const ClosedExpr& e, const Rat& a, const PrecCtx& ctx);

}  // namespace appell
