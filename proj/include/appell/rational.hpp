#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace appell {

/// Exact rational number; gmp keeps it canonical (coprime, positive denominator).
using Rat = mpq_class;
using Int = mpz_class;

/// Parses "p", "-p", "p/q" (surrounding whitespace allowed). Throws ParseError.
Rat parse_rat(std::string_view text);

std::string to_string(const Rat& q);

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }
inline bool is_nonpositive_integer(const Rat& q) { return is_integer(q) && sgn(q) <= 0; }
inline bool is_nonnegative_integer(const Rat& q) { return is_integer(q) && sgn(q) >= 0; }

/// Rational power with a machine-integer exponent (negative allowed for nonzero base).
Rat pow(const Rat& base, long exponent);

}  // namespace appell
