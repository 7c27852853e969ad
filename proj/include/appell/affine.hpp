#pragma once

#include <string>
#include <string_view>

#include "appell/rational.hpp"

namespace appell {

class Poly;

/// p*a + q in the single free symbol a.
struct Affine {
  Rat p, q;

  Rat at(const Rat& a) const { return p * a + q; }
  bool is_constant() const { return p == 0; }
  Poly poly() const;
  /// Normalized text accepted by parse_affine: "2*a+1/2", "a-1", "-a", "3/4".
  std::string to_string() const;
  bool operator==(const Affine&) const = default;
};

/// Grammar: ['-'] [rational] ['*'] ['a'] [('+'|'-') rational], whitespace ignored.
/// Throws ParseError on anything else.
Affine parse_affine(std::string_view text);

}  // namespace appell
