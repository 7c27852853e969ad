#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "appell/asymptotics.hpp"
#include "appell/contiguity.hpp"
#include "appell/errors.hpp"
#include "appell/identity_db.hpp"
#include "appell/verifier.hpp"

using namespace appell;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (!ok) detail << "; ";
    else detail.str("");
    ok = false;
    detail << why;
  }
};

using Rng = std::mt19937_64;

long uniform(Rng& g, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }

Rat rand_open(Rng& g, const Rat& lo, const Rat& hi, long max_den) {
  for (;;) {
    long d = uniform(g, 2, max_den);
    Rat q(uniform(g, 0, d), d);
    q.canonicalize();
    Rat v = lo + (hi - lo) * q;
    if (v > lo && v < hi) return v;
  }
}

Rat rand_rat(Rng& g, long lo, long hi, long max_den) {
  long d = uniform(g, 1, max_den);
  Rat r(uniform(g, lo * d, hi * d), d);
  r.canonicalize();
  return r;
}

bool is_nonpositive_integer(const Rat& q) { return q <= 0 && q.get_den() == 1; }

const std::vector<IdentityRecord>& db() {
  static const std::vector<IdentityRecord> d = load_identity_table(default_identity_table_path());
  return d;
}

// ---------------------------------------------------------------------------

Outcome table1_certification() {
  Outcome o;
  if (table1().size() != 15) o.fail("expected 15 rows, found " + std::to_string(table1().size()));
  for (const auto& s : table1()) {
    CaseCheck c = check_case_vanishing(s);
    if (!c.certified) o.fail(s.id + " not certified");
    if (!c.ratio_matches) o.fail(s.id + " ratio " + c.ratio.to_string());
  }
  const std::map<std::string, std::string> displayed{
      {"A.1", "3^8/(2^2*5^5)*(2*a+1/2)*(2*a+3/2)/(a+1/2)^2"},
      {"A.3", "3^4/5^4"},
      {"B.3", "-2^6/5^3"},
      {"C.4", "2/3^3"},
      {"E.1", "(a+1/6)*(a+5/6)/((a+1/3)*(a+2/3))"}};
  for (const auto& [id, text] : displayed) {
    const SextupleSpec* s = find_sextuple(id);
    if (!s) {
      o.fail(id + " missing");
      continue;
    }
    if (check_case_vanishing(*s).ratio != parse_ratf(text)) o.fail(id + " differs from " + text);
  }
  if (o.ok) o.detail << "15 rows certified, ratios exact";
  return o;
}

Outcome worked_example() {
  Outcome o;
  const SextupleSpec* s = find_sextuple("A.1");
  F1Params base = F1Params::generic();
  base.x = RatF(Rat(1, 81));
  base.y = RatF(Rat(1, 6));
  ContigRel rel = derive_contiguity({2, 1, 4, 2}, base);
  ContigRel at = specialize(rel, s->params());
  if (!at.q10.is_zero()) o.fail("Q10 = " + at.q10.to_string());
  if (!at.q01.is_zero()) o.fail("Q01 = " + at.q01.to_string());
  RatF want = parse_ratf("3^8/(2^2*5^5)*(2*a+1/2)*(2*a+3/2)/(a+1/2)^2");
  if (at.q00 != want) o.fail("Q00 = " + at.q00.to_string());
  if (o.ok) o.detail << "Q10 = Q01 = 0, Q00 = " << at.q00.to_string();
  return o;
}

Outcome identity_suite() {
  Outcome o;
  VerifyOptions opt;
  opt.digits = 50;
  opt.filter = ".*";
  std::map<std::string, Verdict> seen;
  std::size_t checked = 0;
  for (const char* t : {"2", "3", "4", "5"}) {
    opt.table = t;
    VerifyReport rep = verify_all(db(), {}, opt);
    for (const auto& r : rep.rows) {
      if (r.status == "conjectural") continue;
      ++checked;
      seen[r.id] = r.verdict;
      if (r.verdict != Verdict::pass) o.fail(r.id + " " + to_string(r.verdict) + " " + r.message);
    }
  }
  for (const char* id : {"A″.3", "B″.3", "A‴.3", "C″.4", "D‴.2", "B⁗.2"})
    if (!seen.count(id)) o.fail(std::string(id) + " missing");
  if (o.ok) o.detail << checked << " records pass at 50 digits";
  return o;
}

IdentityRecord make_record(const std::string& id, const std::vector<std::string>& params, const Rat& x,
                           const Rat& a, const std::string& rhs) {
  nlohmann::json j = {{"id", id},           {"series", "2F1"},         {"params", params},
                      {"x", to_string(x)}, {"subst_a", to_string(a)}, {"rhs", rhs},
                      {"status", "proved"}};
  return parse_identity_table(nlohmann::json::array({j}).dump()).at(0);
}

std::string gamma_of(const Affine& f) { return "Gamma(" + f.to_string() + ")"; }

Outcome sanity_identities() {
  Outcome o;
  Rng g(20240601);
  const PrecCtx ctx = PrecCtx::for_digits(50);
  std::vector<IdentityRecord> recs;
  while (recs.size() < 5) {
    long m = uniform(g, 1, 12);
    Rat c = rand_open(g, Rat(0), Rat(5), 9), a = rand_open(g, Rat(-2), Rat(2), 9);
    if (c + m - a <= 0 || is_nonpositive_integer(c - a) || is_nonpositive_integer(c - a + m)) continue;
    Rat cm = c + m;
    std::string rhs = gamma_of({0, c}) + "*" + gamma_of({-1, cm}) + "/(" + gamma_of({0, cm}) + "*" +
                      gamma_of({-1, c}) + ")";
    recs.push_back(make_record("Gauss[m=" + std::to_string(m) + "]", {std::to_string(-m), "a", to_string(c)}, Rat(1),
                               a, rhs));
  }
  while (recs.size() < 10) {
    Rat b = rand_open(g, Rat(-1, 2), Rat(3), 12), a = rand_open(g, Rat(-1, 2), Rat(3), 12);
    if (is_nonpositive_integer(a + b + Rat(1, 2))) continue;
    std::string rhs = "sqrt(pi)*" + gamma_of({1, b + Rat(1, 2)}) + "/(" + gamma_of({1, Rat(1, 2)}) + "*" +
                      gamma_of({0, b + Rat(1, 2)}) + ")";
    recs.push_back(make_record("Kummer[b=" + to_string(b) + "]", {"2*a", to_string(2 * b), Affine{1, b + Rat(1, 2)}.to_string()},
                               Rat(1, 2), a, rhs));
  }
  while (recs.size() < 15) {
    Rat a = rand_open(g, Rat(-1, 2), Rat(6), 12);
    recs.push_back(make_record("Gosper", {"1/2", "-a", "2*a+5/2"}, Rat(1, 4), a,
                               "1/(3*2^(2*a))*sqrt(pi)*Gamma(2*a+5/2)/Gamma(a+3/2)^2"));
  }
  for (const auto& r : recs) {
    VerifyRow row = verify_identity(r, ctx);
    if (row.verdict != Verdict::pass) o.fail(r.id + "@a=" + to_string(r.a_value()) + " " + to_string(row.verdict));
  }
  if (o.ok) o.detail << "5 Gauss, 5 Kummer, 5 Gosper picks pass at 50 digits";
  return o;
}

Outcome four_term_residuals() {
  Outcome o;
  Rng g(7771);
  const PrecCtx ctx = PrecCtx::for_digits(60);
  int done = 0;
  double worst = 0;
  while (done < 20) {
    ShiftVec k{uniform(g, -3, 3), uniform(g, -3, 3), uniform(g, -3, 3), uniform(g, -3, 3)};
    Assignment pt{};
    pt[static_cast<std::size_t>(Var::a)] = rand_rat(g, -2, 3, 7);
    pt[static_cast<std::size_t>(Var::b1)] = rand_rat(g, -2, 3, 7);
    pt[static_cast<std::size_t>(Var::b2)] = rand_rat(g, -2, 3, 7);
    pt[static_cast<std::size_t>(Var::c)] = rand_open(g, Rat(3), Rat(6), 7);
    pt[static_cast<std::size_t>(Var::x)] = rand_open(g, Rat(-1, 2), Rat(1, 2), 11);
    pt[static_cast<std::size_t>(Var::y)] = rand_open(g, Rat(-1, 2), Rat(1, 2), 11);
    F1Params base = F1Params::generic();
    base.x = RatF(*pt[static_cast<std::size_t>(Var::x)]);
    base.y = RatF(*pt[static_cast<std::size_t>(Var::y)]);
    Real r;
    try {
      r = numeric_four_term_check(derive_contiguity(k, base), k, pt, ctx);
    } catch (const DivisionByZero&) {
      continue;
    }
    if (!r.contains(Rat(0))) o.fail(to_string(k) + " residual excludes 0");
    if (!r.radius_below_pow10(40)) o.fail(to_string(k) + " radius " + r.to_string(3));
    worst = std::max(worst, r.rad_double());
    ++done;
  }
  if (o.ok) o.detail << "20 residuals contain 0, max radius " << worst;
  return o;
}

Outcome example2() {
  Outcome o;
  const PrecCtx ctx = PrecCtx::for_digits(50);
  const long wp = ctx.working_bits;
  PhaseFn ph = PhaseFn::example2();
  Real log_ratio = log(Real::from_rat(Rat(81, 625), wp));
  auto cps = critical_points(ph, ctx);
  Real t0 = Real::from_rat(Rat(11, 16), wp) - sqrt(Real::from_long(10, wp)).mul_rat(Rat(1, 8));
  if (cps.size() != 1) {
    o.fail("expected one critical point, found " + std::to_string(cps.size()));
  } else {
    if (!cps[0].t.overlaps(t0)) o.fail("t0 misses 11/16 - sqrt(10)/8");
    if (!cps[0].h.overlaps(log_ratio)) o.fail("h(t0) misses log(81/625)");
  }
  if (!phase_value(ph, Real::from_long(1, wp)).overlaps(log_ratio)) o.fail("h(1) misses log(81/625)");

  std::vector<long> n;
  for (long i = 0; i <= 20; ++i) n.push_back(i);
  LimitSequence seq = laplace_sequence(n, ctx);
  for (std::size_t i = 0; i < seq.terms.size(); ++i)
    if (!seq.terms[i].contains(Rat(9, 5))) o.fail("term n=" + std::to_string(seq.n[i]) + " misses 1.8");
  Extrapolation ex = richardson_extrapolate(seq);
  Real gap = ex.value - Real::from_rat(Rat(9, 5), wp);
  if (!(mpfr_get_d(gap.mag_upper().get(), MPFR_RNDU) < 1e-6)) o.fail("Richardson value " + ex.value.to_string(12));

  auto rows = asymptotic_forms_check({64}, ctx);
  double ar = rows[0].a_ratio.mid_double(), br = rows[0].b_ratio.mid_double();
  if (std::fabs(ar - 1) > 0.02 || std::fabs(br - 1) > 0.02)
    o.fail("ratios at n=64: " + std::to_string(ar) + ", " + std::to_string(br));
  if (o.ok) o.detail << "t0 = " << cps[0].t.to_string(12) << ", terms 0..20 contain 1.8, A/B ratios at 64: " << ar
                     << ", " << br;
  return o;
}

Outcome conjectures() {
  Outcome o;
  const PrecCtx ctx = PrecCtx::for_digits(50);
  std::map<std::string, Verdict> seen;
  for (const auto& r : db()) {
    if (r.table() != "conj") continue;
    VerifyRow row = verify_identity(r, ctx);
    seen[r.id] = row.verdict;
    if (row.verdict != Verdict::conjectural_pass) o.fail(r.id + " " + to_string(row.verdict));
  }
  for (const char* id : {"conj2[a=0]", "conj2[a=-1/3]", "conj3", "conj4", "conj5", "conj6", "F1-algebraic"})
    if (!seen.count(id)) o.fail(std::string(id) + " missing");
  if (o.ok) o.detail << seen.size() << " conjectural records verify numerically";
  return o;
}

Outcome property_suites() {
  Outcome o;
  std::string cmd = std::string("\"") + APPELL_PROPERTY_TESTS + "\" > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  if (rc != 0) o.fail("property_tests exited with status " + std::to_string(rc));
  else o.detail << "property_tests green";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Table 1 exact certification", table1_certification},
      {"worked example k=(2,1,4,2)", worked_example},
      {"Tables 2-5 numeric identities", identity_suite},
      {"Gauss, Kummer and Gosper picks", sanity_identities},
      {"four-term residuals", four_term_residuals},
      {"Example 2 Laplace analysis", example2},
      {"conjectural identities", conjectures},
      {"property suites", property_suites}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    if (!o.ok) ++failures;
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
              << o.detail.str() << ")" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
