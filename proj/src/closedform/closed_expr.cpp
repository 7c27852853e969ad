#include "appell/closed_expr.hpp"

#include "appell/errors.hpp"
#include "appell/gamma.hpp"
#include "scanner.hpp"

namespace appell {

ClosedExpr ClosedExpr::literal(const Rat& q) {
  return ClosedExpr(std::make_shared<const Node>(Node{Kind::literal, q, {0, 0}, {}}));
}
ClosedExpr ClosedExpr::pi() { return ClosedExpr(std::make_shared<const Node>(Node{Kind::pi, 0, {0, 0}, {}})); }
ClosedExpr ClosedExpr::symbol() {
  return ClosedExpr(std::make_shared<const Node>(Node{Kind::symbol, 0, {0, 0}, {}}));
}
ClosedExpr ClosedExpr::sqrt(ClosedExpr e) {
  return ClosedExpr(std::make_shared<const Node>(Node{Kind::sqrt, 0, {0, 0}, {std::move(e)}}));
}
ClosedExpr ClosedExpr::gamma(const Affine& arg) {
  return ClosedExpr(std::make_shared<const Node>(Node{Kind::gamma, 0, arg, {}}));
}
ClosedExpr ClosedExpr::cos_pi(const Affine& arg) {
  return ClosedExpr(std::make_shared<const Node>(Node{Kind::cos_pi, 0, arg, {}}));
}
ClosedExpr ClosedExpr::pow(ClosedExpr base, const Affine& exponent) {
  return ClosedExpr(std::make_shared<const Node>(Node{Kind::pow, 0, exponent, {std::move(base)}}));
}
ClosedExpr ClosedExpr::neg(ClosedExpr e) {
  return ClosedExpr(std::make_shared<const Node>(Node{Kind::neg, 0, {0, 0}, {std::move(e)}}));
}
ClosedExpr ClosedExpr::binary(Kind k, ClosedExpr l, ClosedExpr r) {
  return ClosedExpr(std::make_shared<const Node>(Node{k, 0, {0, 0}, {std::move(l), std::move(r)}}));
}

bool ClosedExpr::depends_on_a() const {
  switch (kind()) {
    case Kind::symbol:
      return true;
    case Kind::gamma:
    case Kind::cos_pi:
      return !affine().is_constant();
    case Kind::pow:
      if (!affine().is_constant()) return true;
      break;
    default:
      break;
  }
  for (const auto& c : node_->children)
    if (c.depends_on_a()) return true;
  return false;
}

namespace {

using Kind = ClosedExpr::Kind;

class Parser {
 public:
  explicit Parser(std::string_view s) : sc_(s) {}

  ClosedExpr parse() {
    ClosedExpr e = expr();
    if (!sc_.at_end()) sc_.fail("unexpected trailing input");
    return e;
  }

 private:
  detail::Scanner sc_;

  ClosedExpr expr() {
    ClosedExpr e = sc_.accept('-') ? ClosedExpr::neg(term()) : term();
    for (;;) {
      if (sc_.accept('+')) {
        e = ClosedExpr::binary(Kind::add, e, term());
      } else if (sc_.accept('-')) {
        e = ClosedExpr::binary(Kind::sub, e, term());
      } else {
        return e;
      }
    }
  }

  ClosedExpr term() {
    ClosedExpr e = factor();
    for (;;) {
      if (sc_.accept('*')) {
        e = ClosedExpr::binary(Kind::mul, e, factor());
      } else if (sc_.accept('/')) {
        std::size_t at = sc_.pos();
        ClosedExpr r = factor();
        if (e.kind() == Kind::literal && r.kind() == Kind::literal) {
          if (r.value() == 0) throw ParseError("division by zero", at);
          e = ClosedExpr::literal(e.value() / r.value());
        } else {
          e = ClosedExpr::binary(Kind::div, e, r);
        }
      } else {
        return e;
      }
    }
  }

  ClosedExpr factor() {
    ClosedExpr b = base();
    if (sc_.accept('^')) {
      if (sc_.peek_digit()) return ClosedExpr::pow(b, Affine{0, Rat(sc_.integer())});
      sc_.expect('(');
      Affine e = sc_.affine();
      if (!sc_.accept(')')) sc_.fail("exponent is not affine in a");
      return ClosedExpr::pow(b, e);
    }
    return b;
  }

  ClosedExpr base() {
    if (sc_.peek_digit()) return ClosedExpr::literal(Rat(sc_.integer()));
    if (sc_.accept('(')) {
      ClosedExpr e = expr();
      sc_.expect(')');
      return e;
    }
    if (!sc_.peek_alpha()) sc_.fail("expected a number, identifier or '('");
    std::size_t at = sc_.pos();
    std::string id = sc_.identifier();
    if (id == "pi") return ClosedExpr::pi();
    if (id == "a") return ClosedExpr::symbol();
    if (id == "sqrt") {
      sc_.expect('(');
      ClosedExpr e = expr();
      sc_.expect(')');
      return ClosedExpr::sqrt(e);
    }
    if (id == "Gamma") {
      sc_.expect('(');
      Affine arg = sc_.affine();
      if (!sc_.accept(')')) sc_.fail("Gamma argument is not affine in a");
      return ClosedExpr::gamma(arg);
    }
    if (id == "cos") {
      sc_.expect('(');
      if (sc_.identifier() != "pi") sc_.fail("cos argument must be pi*affine");
      sc_.expect('*');
      bool grouped = sc_.accept('(');
      Affine arg = sc_.affine();
      if (grouped) sc_.expect(')');
      if (!sc_.accept(')')) sc_.fail("cos argument is not pi times an affine form in a");
      return ClosedExpr::cos_pi(arg);
    }
    throw ParseError("unknown identifier '" + id + "'", at);
  }
};

bool is_atom(const ClosedExpr& e) {
  switch (e.kind()) {
    case Kind::pi:
    case Kind::symbol:
    case Kind::sqrt:
    case Kind::gamma:
    case Kind::cos_pi:
      return true;
    case Kind::literal:
      return is_integer(e.value()) && e.value() >= 0;
    default:
      return false;
  }
}

std::string paren(const std::string& s) { return "(" + s + ")"; }

std::string print(const ClosedExpr& e);

std::string signed_operand(const ClosedExpr& e) {
  std::string s = print(e);
  bool wrap = e.kind() == Kind::add || e.kind() == Kind::sub || s[0] == '-';
  return wrap ? paren(s) : s;
}

std::string print(const ClosedExpr& e) {
  switch (e.kind()) {
    case Kind::literal:
      return to_string(e.value());
    case Kind::pi:
      return "pi";
    case Kind::symbol:
      return "a";
    case Kind::sqrt:
      return "sqrt(" + print(e.child(0)) + ")";
    case Kind::gamma:
      return "Gamma(" + e.affine().to_string() + ")";
    case Kind::cos_pi: {
      std::string arg = e.affine().to_string();
      return "cos(pi*" + (arg[0] == '-' ? paren(arg) : arg) + ")";
    }
    case Kind::pow: {
      const ClosedExpr& b = e.child(0);
      std::string bs = is_atom(b) ? print(b) : paren(print(b));
      const Affine& x = e.affine();
      if (x.is_constant() && is_integer(x.q) && x.q >= 0) return bs + "^" + to_string(x.q);
      return bs + "^" + paren(x.to_string());
    }
    case Kind::neg: {
      return "-" + signed_operand(e.child(0));
    }
    case Kind::add:
    case Kind::sub: {
      return print(e.child(0)) + (e.kind() == Kind::add ? " + " : " - ") + signed_operand(e.child(1));
    }
    case Kind::mul:
    case Kind::div: {
      const ClosedExpr& l = e.child(0);
      const ClosedExpr& r = e.child(1);
      bool lwrap = l.kind() == Kind::add || l.kind() == Kind::sub || l.kind() == Kind::neg;
      // A literal-literal quotient would refold into one literal on reparse.
      if (e.kind() == Kind::div && l.kind() == Kind::literal) lwrap = lwrap || r.kind() == Kind::literal;
      bool rwrap = !(is_atom(r) || r.kind() == Kind::pow);
      std::string op = e.kind() == Kind::mul ? "*" : "/";
      return (lwrap ? paren(print(l)) : print(l)) + op + (rwrap ? paren(print(r)) : print(r));
    }
  }
  return "";
}

}  // namespace

ClosedExpr parse_expr(std::string_view text) { return Parser(text).parse(); }

std::string print_expr(const ClosedExpr& e) { return print(e); }

std::optional<Rat> exact_value(const ClosedExpr& e, const Rat& a) {
  switch (e.kind()) {
    case Kind::literal:
      return e.value();
    case Kind::symbol:
      return a;
    case Kind::neg: {
      auto v = exact_value(e.child(0), a);
      if (!v) return std::nullopt;
      return Rat(-*v);
    }
    case Kind::add:
    case Kind::sub:
    case Kind::mul:
    case Kind::div: {
      auto l = exact_value(e.child(0), a);
      if (!l) return std::nullopt;
      auto r = exact_value(e.child(1), a);
      if (!r) return std::nullopt;
      switch (e.kind()) {
        case Kind::add:
          return Rat(*l + *r);
        case Kind::sub:
          return Rat(*l - *r);
        case Kind::mul:
          return Rat(*l * *r);
        default:
          if (*r == 0) throw DomainError("division by zero in closed form");
          return Rat(*l / *r);
      }
    }
    case Kind::pow: {
      Rat x = e.affine().at(a);
      if (!is_integer(x)) return std::nullopt;
      auto b = exact_value(e.child(0), a);
      if (!b) return std::nullopt;
      if (*b == 0 && x < 0) throw DomainError("zero to a negative power in closed form");
      Rat r(1), base = x < 0 ? Rat(1 / *b) : *b;
      mpz_class n = x < 0 ? mpz_class(-x.get_num()) : x.get_num();
      unsigned long k = n.get_ui();
      mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), k);
      mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), k);
      r.canonicalize();
      return r;
    }
    default:
      return std::nullopt;
  }
}

namespace {

Real eval(const ClosedExpr& e, const Rat& a, const PrecCtx& ctx) {
  const long wp = ctx.working_bits;
  if (auto q = exact_value(e, a)) return Real::from_rat(*q, wp);
  switch (e.kind()) {
    case Kind::pi:
      return appell::pi(wp);
    case Kind::sqrt: {
      Real v = eval(e.child(0), a, ctx);
      if (!v.is_positive()) throw DomainError("sqrt of a quantity not certified positive");
      return appell::sqrt(v);
    }
    case Kind::gamma:
      return gamma_rat(e.affine().at(a), ctx);
    case Kind::cos_pi:
      return appell::cos_pi(e.affine().at(a), wp);
    case Kind::pow: {
      Rat x = e.affine().at(a);
      Real b = eval(e.child(0), a, ctx);
      if (is_integer(x)) return pow_int(b, x.get_num().get_si());
      if (!b.is_positive()) throw DomainError("non-integer power of a quantity not certified positive");
      return pow_rat(b, x);
    }
    case Kind::neg:
      return -eval(e.child(0), a, ctx);
    case Kind::add:
      return eval(e.child(0), a, ctx) + eval(e.child(1), a, ctx);
    case Kind::sub:
      return eval(e.child(0), a, ctx) - eval(e.child(1), a, ctx);
    case Kind::mul:
      return eval(e.child(0), a, ctx) * eval(e.child(1), a, ctx);
    case Kind::div: {
      Real d = eval(e.child(1), a, ctx);
      if (d.contains_zero()) throw DomainError("division by a quantity not certified nonzero");
      return eval(e.child(0), a, ctx) / d;
    }
    default:
      break;
  }
  throw Error("internal: unhandled closed-form node");
}

}  // namespace

Real eval_expr(const ClosedExpr& e, const Rat& a, const PrecCtx& ctx) {
  return eval(e, a, ctx.with_bits(ctx.working_bits + 32));
}

}  // namespace appell
