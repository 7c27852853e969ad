#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "appell/asymptotics.hpp"
#include "appell/contiguity.hpp"
#include "appell/errors.hpp"
#include "appell/hypergeom.hpp"
#include "appell/identity_db.hpp"
#include "appell/verifier.hpp"

using namespace appell;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;  // verification failure
constexpr int kExitUsage = 2;  // usage, domain or I/O error

long shown_digits(long digits) { return std::max(1L, digits); }

int cmd_eval2f1(const std::string& a, const std::string& b, const std::string& c, const std::string& x,
                long digits) {
  Params2F1 p{parse_rat(a), parse_rat(b), parse_rat(c)};
  EvalResult r = eval_2f1(p, parse_rat(x), PrecCtx::for_digits(digits));
  std::cout << "2F1(" << to_string(p.a) << ", " << to_string(p.b) << "; " << to_string(p.c) << "; " << x
            << ")\n  value  " << r.value.to_string(shown_digits(digits)) << "\n  method " << to_string(r.method)
            << "\n  terms  " << r.terms_used << "\n";
  return kExitOk;
}

int cmd_evalf1(const std::array<std::string, 6>& in, long digits, const std::string& method) {
  ParamsF1 p{parse_rat(in[0]), parse_rat(in[1]), parse_rat(in[2]), parse_rat(in[3])};
  Rat x = parse_rat(in[4]), y = parse_rat(in[5]);
  F1Method m = F1Method::automatic;
  if (method == "series") m = F1Method::series;
  if (method == "terminating") m = F1Method::terminating;
  if (method == "integral") m = F1Method::integral;
  EvalResult r = eval_f1(p, x, y, PrecCtx::for_digits(digits), m);
  std::cout << "F1(" << to_string(p.alpha) << "; " << to_string(p.beta1) << ", " << to_string(p.beta2) << "; "
            << to_string(p.gamma) << "; " << to_string(x) << ", " << to_string(y) << ")\n  value  "
            << r.value.to_string(shown_digits(digits)) << "\n  method " << to_string(r.method) << "\n  terms  "
            << r.terms_used << "\n";
  return kExitOk;
}

void print_relation(const ContigRel& rel) {
  std::cout << "  q10 = " << rel.q10.to_string() << "\n  q01 = " << rel.q01.to_string()
            << "\n  q00 = " << rel.q00.to_string() << "\n";
}

int cmd_contig(const std::string& k_text, const std::string& row_id, const std::string& x, const std::string& y,
               bool print) {
  const SextupleSpec* row = nullptr;
  if (!row_id.empty()) {
    row = find_sextuple(row_id);
    if (!row) throw DomainError("unknown Table 1 row '" + row_id + "'");
  }
  if (k_text.empty() && !row) throw DomainError("--k is required unless --row is given");
  ShiftVec k = k_text.empty() ? row->shift : parse_shift(k_text);

  F1Params base = F1Params::generic();
  if (row) {
    base.x = RatF(row->x);
    base.y = RatF(row->y);
  }
  if (!x.empty()) base.x = RatF(parse_rat(x));
  if (!y.empty()) base.y = RatF(parse_rat(y));

  ContigRel rel = derive_contiguity(k, base);
  std::cout << "shift k = " << to_string(k) << "\n";
  if (!row) {
    if (print) print_relation(rel);
    return kExitOk;
  }
  ContigRel at = specialize(rel, row->params());
  std::cout << "row " << row->id << ": alpha=" << row->alpha.to_string() << " beta1=" << row->beta1.to_string()
            << " beta2=" << row->beta2.to_string() << " gamma=" << row->gamma.to_string()
            << " x=" << to_string(row->x) << " y=" << to_string(row->y) << "\n";
  if (print) print_relation(at);
  std::cout << "  q10, q01 vanish: " << (at.q10.is_zero() && at.q01.is_zero() ? "yes" : "no") << "\n";
  if (!(k == row->shift)) return kExitOk;
  CaseCheck cc = check_case_vanishing(*row);
  std::cout << "  certified for all n: " << (cc.certified ? "yes" : "no") << "\n  ratio F(a+1)/F(a) = "
            << cc.ratio.to_string() << "\n  matches table: " << (cc.ratio_matches ? "yes" : "no") << "\n";
  return cc.certified && cc.ratio_matches ? kExitOk : kExitFail;
}

int cmd_verify(const VerifyOptions& opt, const std::string& format, const std::string& db_path) {
  std::vector<IdentityRecord> db = load_identity_table(db_path.empty() ? default_identity_table_path() : db_path);
  VerifyReport rep = verify_all(db, table1(), opt);
  std::cout << (format == "json" ? rep.to_json() : rep.to_text());
  return rep.exit_code();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!(out << text)) throw Error("cannot write '" + path.string() + "'");
}

std::vector<long> laplace_points(long n_max) {
  std::vector<long> ns;
  for (long n = 0; n <= std::min(n_max, 20L); ++n) ns.push_back(n);
  for (long n = 32; n < n_max; n *= 2) ns.push_back(n);
  if (n_max > 20) ns.push_back(n_max);
  return ns;
}

int cmd_laplace(long n_max, long digits, const std::string& csv, unsigned jobs) {
  if (n_max < 0 || n_max > kLaplaceMaxN)
    throw DomainError("--n-max must lie in [0, " + std::to_string(kLaplaceMaxN) + "]");
  const PrecCtx ctx = PrecCtx::for_digits(digits);
  const long shown = std::min(digits, 30L);
  PhaseFn ph = PhaseFn::example2();

  std::cout << "phase h(t) = log(t (1 - 80t/81)^-2 (1 - 16t/15)^4)\n";
  for (const auto& cp : critical_points(ph, ctx))
    std::cout << "  critical point t0 = " << cp.t.to_string(shown) << "\n  h(t0) = " << cp.h.to_string(shown)
              << "\n";
  std::cout << "  h(1)  = " << phase_value(ph, Real::from_long(1, ctx.working_bits)).to_string(shown) << "\n";

  LimitSequence seq = laplace_sequence(laplace_points(n_max), ctx, jobs);
  bool constant = true;
  std::cout << "terms A(n) B(n):\n";
  for (std::size_t i = 0; i < seq.n.size(); ++i) {
    constant = constant && seq.terms[i].contains(Rat(9, 5));
    std::cout << "  n=" << seq.n[i] << "  " << seq.terms[i].to_string(shown) << "\n";
  }
  std::cout << "exact constancy (every term contains 9/5): " << (constant ? "yes" : "no") << "\n";

  std::vector<AsymptoticRow> rows = asymptotic_forms(seq, ctx);
  std::cout << "asymptotic forms (n, A-ratio, B-ratio):\n";
  for (const auto& r : rows)
    std::cout << "  n=" << r.n << "  " << r.a_ratio.to_string(12) << "  " << r.b_ratio.to_string(12) << "\n";

  if (seq.n.size() >= 4) {
    Extrapolation e = richardson_extrapolate(seq);
    std::cout << "extrapolated limit of A B: " << e.value.to_string(shown) << "  (heuristic error "
              << e.error_estimate << ")\n";
  }
  if (rows.size() >= 3) {
    LimitSequence forms;
    for (const auto& r : rows) {
      forms.n.push_back(r.n);
      forms.terms.push_back(r.term / r.a_ratio);
    }
    Extrapolation e = richardson_extrapolate(forms);
    std::cout << "extrapolated limit with A replaced by its asymptotic form: " << e.value.to_string(shown)
              << "  (heuristic error " << e.error_estimate << ")\n";
  }

  if (!csv.empty()) {
    std::filesystem::path path(csv);
    std::filesystem::path phase = path.parent_path() / (path.stem().string() + "_phase.csv");
    write_file(path, asymptotic_table_csv(rows, digits));
    write_file(phase, phase_samples_csv(ph, 999));
    std::cout << "wrote " << path.string() << " and " << phase.string() << "\n";
  }
  return constant ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Appell F1 contiguity relations, rigorous hypergeometric evaluation and identity verification"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  long digits = 50;

  auto* e2 = app.add_subcommand("eval2f1", "Evaluate 2F1(a, b; c; x) with a rigorous enclosure");
  std::string a, b, c, x2;
  e2->add_option("--a", a, "a (rational p/q)")->required();
  e2->add_option("--b", b, "b")->required();
  e2->add_option("--c", c, "c")->required();
  e2->add_option("--x", x2, "x")->required();
  e2->add_option("--digits", digits, "target decimal digits")->capture_default_str();

  auto* ef = app.add_subcommand("evalf1", "Evaluate F1(alpha; beta1, beta2; gamma; x, y)");
  std::array<std::string, 6> f1in;
  std::string method = "auto";
  ef->add_option("--alpha", f1in[0], "alpha")->required();
  ef->add_option("--beta1", f1in[1], "beta1")->required();
  ef->add_option("--beta2", f1in[2], "beta2")->required();
  ef->add_option("--gamma", f1in[3], "gamma")->required();
  ef->add_option("--x", f1in[4], "x")->required();
  ef->add_option("--y", f1in[5], "y")->required();
  ef->add_option("--digits", digits, "target decimal digits")->capture_default_str();
  ef->add_option("--method", method, "evaluation route")
      ->check(CLI::IsMember({"auto", "series", "terminating", "integral"}))
      ->capture_default_str();

  auto* ct = app.add_subcommand("contig", "Derive the four-term relation F1(p+k) = q10 F1(p+e10) + q01 F1(p+e01) + q00 F1(p)");
  std::string k_text, row_id, cx, cy;
  bool print = false;
  ct->add_option("--k", k_text, "shift K,L1,L2,M (defaults to the row's shift with --row)");
  ct->add_option("--row", row_id, "Table 1 row id, e.g. A.1: specialize and certify");
  ct->add_option("--x", cx, "fix x to a rational before deriving");
  ct->add_option("--y", cy, "fix y to a rational before deriving");
  ct->add_flag("--print-relation", print, "print q10, q01, q00");

  auto* vf = app.add_subcommand("verify", "Verify Table 1 and the identity database");
  VerifyOptions vopt;
  vopt.jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string format = "text", db_path;
  vf->add_option("--table", vopt.table, "all|1|2|3|4|5|conj")
      ->check(CLI::IsMember({"all", "1", "2", "3", "4", "5", "conj"}))
      ->capture_default_str();
  vf->add_option("--filter", vopt.filter, "regular expression searched in record ids");
  vf->add_option("--digits", vopt.digits, "target decimal digits")->capture_default_str();
  vf->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  vf->add_option("--jobs", vopt.jobs, "worker threads")->check(CLI::PositiveNumber);
  vf->add_option("--db", db_path, "identity database (defaults to the bundled one)");

  auto* lp = app.add_subcommand("laplace", "Example 2 Laplace-method lab");
  long n_max = 20;
  std::string csv;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  lp->add_option("--n-max", n_max, "largest n (terms for 0..min(n-max,20), doublings from 32, and n-max)")
      ->capture_default_str();
  lp->add_option("--digits", digits, "target decimal digits")->capture_default_str();
  lp->add_option("--emit-csv", csv,
                 "write columns n,term,A,B,A_ratio,B_ratio (n >= 4) to PATH and t,h to <stem>_phase.csv");
  lp->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (digits < 1) throw DomainError("--digits must be positive");
    if (*e2) return cmd_eval2f1(a, b, c, x2, digits);
    if (*ef) return cmd_evalf1(f1in, digits, method);
    if (*ct) return cmd_contig(k_text, row_id, cx, cy, print);
    if (*vf) return cmd_verify(vopt, format, db_path);
    if (*lp) return cmd_laplace(n_max, digits, csv, jobs);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
