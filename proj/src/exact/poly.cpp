#include "appell/poly.hpp"

#include <algorithm>
#include <map>

#include "appell/errors.hpp"

namespace appell {

namespace {
constexpr std::array<std::string_view, kNumVars> kVarNames{"a", "b1", "b2", "c", "x", "y", "n"};

bool key_greater(const Term& l, const Term& r) { return l.mono.key() > r.mono.key(); }
}  // namespace

std::string_view var_name(Var v) { return kVarNames[static_cast<std::size_t>(v)]; }

std::optional<Var> var_from_name(std::string_view name) {
  for (Var v : kAllVars)
    if (var_name(v) == name) return v;
  return std::nullopt;
}

Monomial Monomial::power(Var v, unsigned e) {
  if (e > 255) throw DomainError("monomial exponent exceeds 255");
  return Monomial((std::uint64_t{e} << 56) | (std::uint64_t{e} << shift(v)));
}

Monomial Monomial::operator*(Monomial other) const {
  if (degree() + other.degree() > 255) throw DomainError("monomial degree exceeds 255");
  return Monomial(key_ + other.key_);
}

bool Monomial::divides(Monomial other) const {
  for (int i = 0; i < 8; ++i) {
    if (((key_ >> (8 * i)) & 0xffu) > ((other.key_ >> (8 * i)) & 0xffu)) return false;
  }
  return true;
}

Monomial Monomial::without(Var v) const {
  std::uint64_t e = exponent(v);
  return Monomial(key_ - (e << shift(v)) - (e << 56));
}

Poly::Poly(const Rat& constant) {
  if (constant != 0) terms_.push_back({Monomial(), constant});
}

Poly Poly::variable(Var v) { return monomial(Rat(1), Monomial::power(v, 1)); }

Poly Poly::monomial(const Rat& coeff, Monomial m) {
  Poly p;
  if (coeff != 0) p.terms_.push_back({m, coeff});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), key_greater);
  Poly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

Rat Poly::constant_value() const {
  if (terms_.empty()) return Rat(0);
  if (!is_constant()) throw DomainError("polynomial is not constant: " + to_string());
  return terms_[0].coeff;
}

unsigned Poly::degree(Var v) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.exponent(v));
  return d;
}

unsigned Poly::variables() const {
  unsigned mask = 0;
  for (const auto& t : terms_)
    for (Var v : kAllVars)
      if (t.mono.exponent(v) != 0) mask |= 1u << static_cast<unsigned>(v);
  return mask;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

void Poly::add_scaled(const Poly& o, const Rat& s) {
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  while (i != terms_.end() || j != o.terms_.end()) {
    if (j == o.terms_.end() || (i != terms_.end() && i->mono.key() > j->mono.key())) {
      out.push_back(std::move(*i++));
    } else if (i == terms_.end() || j->mono.key() > i->mono.key()) {
      out.push_back({j->mono, j->coeff * s});
      ++j;
    } else {
      Rat c = i->coeff + j->coeff * s;
      if (c != 0) out.push_back({i->mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
}

Poly& Poly::operator+=(const Poly& o) {
  add_scaled(o, Rat(1));
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  add_scaled(o, Rat(-1));
  return *this;
}

Poly& Poly::operator*=(const Rat& s) {
  if (s == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coeff *= s;
  }
  return *this;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly operator*(const Poly& l, const Poly& r) {
  if (l.is_zero() || r.is_zero()) return Poly();
  const Poly& small = l.size() <= r.size() ? l : r;
  const Poly& big = l.size() <= r.size() ? r : l;
  if (small.size() == 1) {
    Poly out;
    out.terms_.reserve(big.size());
    const Term& s = small.terms_[0];
    for (const auto& t : big.terms_) out.terms_.push_back({t.mono * s.mono, t.coeff * s.coeff});
    return out;
  }
  std::map<std::uint64_t, Rat, std::greater<>> acc;
  Rat tmp;
  for (const auto& s : small.terms_) {
    for (const auto& t : big.terms_) {
      Monomial m = s.mono * t.mono;
      tmp = s.coeff * t.coeff;
      auto [it, inserted] = acc.try_emplace(m.key(), tmp);
      if (!inserted) it->second += tmp;
    }
  }
  Poly out;
  out.terms_.reserve(acc.size());
  for (auto& [key, c] : acc) {
    if (c == 0) continue;
    out.terms_.push_back({Monomial::from_key(key), std::move(c)});
  }
  return out;
}

bool operator==(const Poly& l, const Poly& r) {
  if (l.terms_.size() != r.terms_.size()) return false;
  for (std::size_t i = 0; i < l.terms_.size(); ++i)
    if (l.terms_[i].mono != r.terms_[i].mono || l.terms_[i].coeff != r.terms_[i].coeff) return false;
  return true;
}

Poly Poly::pow(unsigned e) const {
  Poly result(1);
  Poly base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

std::optional<Poly> Poly::divide_exact(const Poly& divisor) const {
  if (divisor.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (is_zero()) return Poly();
  if (divisor.is_constant()) return *this * (Rat(1) / divisor.constant_value());
  const Term& lead = divisor.leading();
  std::vector<Term> quotient;
  std::map<std::uint64_t, std::pair<Monomial, Rat>, std::greater<>> rem;
  for (const auto& t : terms_) rem.emplace(t.mono.key(), std::make_pair(t.mono, t.coeff));
  Rat q;
  while (!rem.empty()) {
    auto top = rem.begin();
    Monomial m = top->second.first;
    if (!lead.mono.divides(m)) return std::nullopt;
    Monomial qm = m / lead.mono;
    q = top->second.second / lead.coeff;
    rem.erase(top);
    for (std::size_t i = 1; i < divisor.terms_.size(); ++i) {
      const Term& d = divisor.terms_[i];
      Monomial pm = qm * d.mono;
      auto [it, inserted] = rem.try_emplace(pm.key(), pm, Rat(0));
      it->second.second -= q * d.coeff;
      if (it->second.second == 0) rem.erase(it);
    }
    quotient.push_back({qm, q});
  }
  Poly out;
  out.terms_ = std::move(quotient);  // produced in decreasing order
  return out;
}

std::vector<Poly> Poly::coefficients_in(Var v) const {
  std::vector<Poly> out(degree(v) + 1);
  for (const auto& t : terms_) out[t.mono.exponent(v)].terms_.push_back({t.mono.without(v), t.coeff});
  // Within one bucket the removed offset is constant, so order is preserved.
  return out;
}

Poly Poly::from_coefficients(Var v, const std::vector<Poly>& coeffs) {
  std::vector<Term> all;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    Monomial vk = Monomial::power(v, static_cast<unsigned>(k));
    for (const auto& t : coeffs[k].terms_) all.push_back({t.mono * vk, t.coeff});
  }
  return from_terms(std::move(all));
}

Rat Poly::evaluate(const Assignment& point) const {
  std::array<std::vector<Rat>, kNumVars> powers;
  Rat sum = 0;
  for (const auto& t : terms_) {
    Rat term = t.coeff;
    for (Var v : kAllVars) {
      unsigned e = t.mono.exponent(v);
      if (!e) continue;
      auto idx = static_cast<std::size_t>(v);
      if (!point[idx]) throw DomainError("unassigned variable '" + std::string(var_name(v)) + "'");
      auto& pw = powers[idx];
      if (pw.empty()) pw.push_back(Rat(1));
      while (pw.size() <= e) pw.push_back(pw.back() * *point[idx]);
      term *= pw[e];
    }
    sum += term;
  }
  return sum;
}

Poly Poly::substitute(const std::array<std::optional<Poly>, kNumVars>& images) const {
  std::array<std::vector<Poly>, kNumVars> powers;
  std::vector<Poly> parts;
  std::vector<Term> untouched;
  for (const auto& t : terms_) {
    Monomial keep;
    Poly factor(t.coeff);
    bool replaced = false;
    for (Var v : kAllVars) {
      unsigned e = t.mono.exponent(v);
      if (!e) continue;
      auto idx = static_cast<std::size_t>(v);
      if (!images[idx]) {
        keep = keep * Monomial::power(v, e);
        continue;
      }
      auto& pw = powers[idx];
      if (pw.empty()) pw.push_back(Poly(1));
      while (pw.size() <= e) pw.push_back(pw.back() * *images[idx]);
      factor *= pw[e];
      replaced = true;
    }
    if (!replaced) {
      untouched.push_back({keep, t.coeff});
    } else {
      parts.push_back(factor * Poly::monomial(Rat(1), keep));
    }
  }
  Poly out = from_terms(std::move(untouched));
  for (const auto& p : parts) out += p;
  return out;
}

Poly Poly::substitute(Var v, const Poly& image) const {
  std::array<std::optional<Poly>, kNumVars> images;
  images[static_cast<std::size_t>(v)] = image;
  return substitute(images);
}

Rat Poly::integer_content() const {
  if (terms_.empty()) return Rat(0);
  Int g = 0, l = 1;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  Rat c(g, l);
  c.canonicalize();
  if (sgn(terms_.front().coeff) < 0) c = -c;
  return c;
}

Poly Poly::primitive_integer() const {
  if (terms_.empty()) return *this;
  return *this * (Rat(1) / integer_content());
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    Rat c = t.coeff;
    bool neg = sgn(c) < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) out += '-';
    } else {
      out += neg ? '-' : '+';
    }
    first = false;
    bool unit = (c == 1);
    if (!unit || t.mono.is_one()) {
      out += c.get_str();
      if (!t.mono.is_one()) out += '*';
    }
    bool firstvar = true;
    for (Var v : kAllVars) {
      unsigned e = t.mono.exponent(v);
      if (!e) continue;
      if (!firstvar) out += '*';
      firstvar = false;
      out += var_name(v);
      if (e > 1) out += '^' + std::to_string(e);
    }
  }
  return out;
}

}  // namespace appell
