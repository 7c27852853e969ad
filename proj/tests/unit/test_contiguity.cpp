#include <doctest.h>

#include "appell/contiguity.hpp"

using namespace appell;

TEST_CASE("table 1 exact certification") {
  for (const auto& s : table1()) {
    CAPTURE(s.id);
    CaseCheck c = check_case_vanishing(s);
    CHECK(c.certified);
    CHECK(c.ratio_matches);
    if (!c.ratio_matches) MESSAGE(c.ratio.to_string() << " vs " << s.ratio_expected.to_string());
  }
}

TEST_CASE("generic derivation of the worked example") {
  const SextupleSpec* s = find_sextuple("A.1");
  F1Params base = F1Params::generic();
  base.x = RatF(s->x);
  base.y = RatF(s->y);
  ContigRel rel = derive_contiguity({2, 1, 4, 2}, base);
  ContigRel at = specialize(rel, s->params());
  CHECK(at.q10.is_zero());
  CHECK(at.q01.is_zero());
  CHECK(at.q00 == parse_ratf("3^8/(2^2*5^5)*(2*a+1/2)*(2*a+3/2)/(a+1/2)^2"));
}
