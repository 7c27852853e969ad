#include "appell/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <regex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "appell/errors.hpp"
#include "appell/hypergeom.hpp"

namespace appell {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::domain_skipped:
      return "domain-skipped";
    case Verdict::conjectural_pass:
      return "conjectural-pass";
    case Verdict::conjectural_fail:
      return "conjectural-fail";
  }
  return "fail";
}

namespace {

constexpr int kPrecisionRetries = 2;

// Combined radius within 10^(-(digits-5)) * max(1, |l|).
bool tight(const Real& l, const Real& r, long digits) {
  Mpfr sum(64), lim(64);
  mpfr_add(sum.get(), l.rad().get(), r.rad().get(), MPFR_RNDU);
  mpfr_ui_pow_ui(lim.get(), 10, static_cast<unsigned long>(std::max(digits - 5, 0L)), MPFR_RNDU);
  mpfr_ui_div(lim.get(), 1, lim.get(), MPFR_RNDD);
  Mpfr lo = l.mag_lower();
  if (mpfr_cmp_ui(lo.get(), 1) > 0) mpfr_mul(lim.get(), lim.get(), lo.get(), MPFR_RNDD);
  return mpfr_lessequal_p(sum.get(), lim.get());
}

std::string diff_bound(const Real& l, const Real& r) {
  Real d = l - r;
  Mpfr m = d.mag_upper();
  char buf[64];
  mpfr_snprintf(buf, sizeof buf, "%.3Re", m.get());
  return buf;
}

long print_digits(long digits) { return std::min(digits, 30L); }

EvalResult eval_lhs(const IdentityRecord& rec, const PrecCtx& ctx) {
  std::vector<Rat> p = rec.params_at_a();
  if (rec.series == SeriesKind::f21) return eval_2f1({p[0], p[1], p[2]}, rec.x, ctx);
  return eval_f1({p[0], p[1], p[2], p[3]}, rec.x, rec.y, ctx);
}

Verdict judge(bool ok, ClaimStatus s) {
  if (s == ClaimStatus::conjectural) return ok ? Verdict::conjectural_pass : Verdict::conjectural_fail;
  return ok ? Verdict::pass : Verdict::fail;
}

}  // namespace

VerifyRow verify_identity(const IdentityRecord& rec, const PrecCtx& ctx0) {
  VerifyRow row;
  row.id = rec.id;
  row.table = rec.table();
  row.status = to_string(rec.status);
  const Rat a = rec.a_value();
  PrecCtx ctx = ctx0;
  for (int attempt = 0;; ++attempt) {
    EvalResult lhs;
    try {
      lhs = eval_lhs(rec, ctx);
    } catch (const DomainError& e) {
      row.verdict = Verdict::domain_skipped;
      row.message = std::string("lhs: ") + e.what();
      return row;
    } catch (const Error& e) {
      row.verdict = judge(false, rec.status);
      row.message = std::string("lhs: ") + e.what();
      return row;
    }
    Real rhs;
    try {
      rhs = eval_expr(rec.rhs, a, ctx);
    } catch (const DomainError& e) {
      row.verdict = Verdict::domain_skipped;
      row.message = std::string("rhs: ") + e.what();
      return row;
    }
    row.method = to_string(lhs.method);
    row.lhs = lhs.value.to_string(print_digits(ctx.target_digits));
    row.rhs = rhs.to_string(print_digits(ctx.target_digits));
    row.diff_bound = diff_bound(lhs.value, rhs);
    if (!lhs.value.overlaps(rhs)) {
      row.verdict = judge(false, rec.status);
      row.message = "enclosures are disjoint";
      return row;
    }
    if (tight(lhs.value, rhs, ctx.target_digits)) {
      row.verdict = judge(true, rec.status);
      return row;
    }
    if (attempt == kPrecisionRetries) {
      row.verdict = judge(false, rec.status);
      row.message = "enclosures overlap but the combined radius exceeds the tolerance";
      return row;
    }
    ctx = ctx.with_bits(ctx.working_bits * 2);
  }
}

RatioCheck closed_ratio_numeric_check(const SextupleSpec& s, const Rat& a0, const PrecCtx& ctx) {
  RatioCheck out;
  out.a0 = a0;
  Assignment at{};
  at[static_cast<std::size_t>(Var::a)] = a0;
  Rat exact = s.ratio_expected.evaluate(at);
  out.exact = Real::from_rat(exact, ctx.working_bits);
  auto params = [&](const Rat& a) {
    return ParamsF1{s.alpha.at(a), s.beta1.at(a), s.beta2.at(a), s.gamma.at(a)};
  };
  ParamsF1 p0 = params(a0), p1 = params(a0 + 1);
  if (!f1_evaluable(p0, s.x, s.y) || !f1_evaluable(p1, s.x, s.y)) return out;
  PrecCtx cur = ctx;
  for (int attempt = 0; attempt <= kPrecisionRetries; ++attempt) {
    EvalResult f0 = eval_f1(p0, s.x, s.y, cur);
    EvalResult f1 = eval_f1(p1, s.x, s.y, cur);
    out.method = to_string(f0.method) + "/" + to_string(f1.method);
    if (f0.value.contains_zero()) {
      out.numeric.reset();
      return out;
    }
    out.numeric = f1.value / f0.value;
    if (!out.numeric->overlaps(out.exact)) return out;
    if (tight(*out.numeric, out.exact, ctx.target_digits)) {
      out.pass = true;
      return out;
    }
    cur = cur.with_bits(cur.working_bits * 2);
  }
  return out;
}

VerifyRow verify_table1_row(const SextupleSpec& s, const PrecCtx& ctx) {
  VerifyRow row;
  row.id = s.id;
  row.table = "1";
  row.status = "proved";
  CaseCheck cc = check_case_vanishing(s);
  row.method = "exact";
  std::ostringstream msg;
  if (!cc.certified || !cc.ratio_matches) {
    row.verdict = Verdict::fail;
    msg << (cc.certified ? "" : "Q10/Q01 do not vanish identically; ")
        << (cc.ratio_matches ? "" : "ratio differs from the table: got " + cc.ratio.to_string());
    row.message = msg.str();
    return row;
  }
  bool ok = true;
  long checked = 0;
  for (const Rat& a0 : s.sample_a) {
    RatioCheck rc;
    try {
      rc = closed_ratio_numeric_check(s, a0, ctx);
    } catch (const Error& e) {
      ok = false;
      msg << "a=" << to_string(a0) << ": " << e.what() << "; ";
      continue;
    }
    if (!rc.numeric) {
      msg << "a=" << to_string(a0) << ": numeric domain-skipped; ";
      continue;
    }
    ++checked;
    row.method = "exact+" + rc.method;
    row.lhs = rc.numeric->to_string(print_digits(ctx.target_digits));
    row.rhs = rc.exact.to_string(print_digits(ctx.target_digits));
    row.diff_bound = diff_bound(*rc.numeric, rc.exact);
    if (!rc.pass) {
      ok = false;
      msg << "a=" << to_string(a0) << ": numeric ratio mismatch; ";
    } else {
      msg << "a=" << to_string(a0) << ": numeric ok; ";
    }
  }
  if (checked == 0) msg << "certified exactly, no numeric route";
  row.verdict = ok ? Verdict::pass : Verdict::fail;
  row.message = msg.str();
  if (!row.message.empty() && row.message.back() == ' ') row.message.resize(row.message.size() - 2);
  return row;
}

long VerifyReport::count(Verdict v) const {
  return std::count_if(rows.begin(), rows.end(), [v](const VerifyRow& r) { return r.verdict == v; });
}

int VerifyReport::exit_code() const { return count(Verdict::fail) > 0 ? 1 : 0; }

std::string VerifyReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["digits"] = digits;
  nlohmann::ordered_json summary;
  summary["total"] = rows.size();
  for (Verdict v : {Verdict::pass, Verdict::fail, Verdict::domain_skipped, Verdict::conjectural_pass,
                    Verdict::conjectural_fail})
    summary[to_string(v)] = count(v);
  j["summary"] = summary;
  nlohmann::ordered_json recs = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json o;
    o["id"] = r.id;
    o["table"] = r.table;
    o["status"] = r.status;
    o["method"] = r.method;
    o["lhs"] = r.lhs;
    o["rhs"] = r.rhs;
    o["diff_bound"] = r.diff_bound;
    o["verdict"] = to_string(r.verdict);
    o["message"] = r.message;
    recs.push_back(o);
  }
  j["records"] = recs;
  j["wall_time_seconds"] = wall_seconds;
  return j.dump(2) + "\n";
}

std::string VerifyReport::to_text() const {
  std::ostringstream os;
  for (const auto& r : rows) {
    os << to_string(r.verdict) << "  " << r.id << "  [" << r.method << "]";
    if (!r.lhs.empty()) os << "\n    lhs " << r.lhs << "\n    rhs " << r.rhs << "\n    |lhs-rhs| <= " << r.diff_bound;
    if (!r.message.empty()) os << "\n    " << r.message;
    os << "\n";
  }
  os << "summary: " << rows.size() << " records, " << count(Verdict::pass) << " pass, " << count(Verdict::fail)
     << " fail, " << count(Verdict::domain_skipped) << " domain-skipped, " << count(Verdict::conjectural_pass)
     << " conjectural-pass, " << count(Verdict::conjectural_fail) << " conjectural-fail at " << digits
     << " digits\n";
  if (count(Verdict::conjectural_fail) > 0) os << "warning: conjectural records failed\n";
  return os.str();
}

VerifyReport verify_all(const std::vector<IdentityRecord>& records, const std::vector<SextupleSpec>& rows,
                        const VerifyOptions& opt) {
  static const std::vector<std::string> kTables{"all", "1", "2", "3", "4", "5", "conj"};
  if (std::find(kTables.begin(), kTables.end(), opt.table) == kTables.end())
    throw DomainError("unknown table '" + opt.table + "'");
  std::regex re;
  try {
    re = std::regex(opt.filter);
  } catch (const std::regex_error& e) {
    throw DomainError("invalid filter regex: " + std::string(e.what()));
  }
  auto wanted = [&](const std::string& id, const std::string& table) {
    if (opt.table != "all" && opt.table != table) return false;
    return opt.filter.empty() || std::regex_search(id, re);
  };

  std::vector<const SextupleSpec*> sext;
  for (const auto& s : rows)
    if (wanted(s.id, "1")) sext.push_back(&s);
  std::vector<const IdentityRecord*> recs;
  for (const auto& r : records)
    if (wanted(r.id, r.table())) recs.push_back(&r);

  const PrecCtx ctx = PrecCtx::for_digits(opt.digits);
  const std::size_t total = sext.size() + recs.size();
  std::vector<VerifyRow> out(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      out[i] = i < sext.size() ? verify_table1_row(*sext[i], ctx) : verify_identity(*recs[i - sext.size()], ctx);
    }
  };
  auto t0 = std::chrono::steady_clock::now();
  unsigned jobs = std::max(1u, opt.jobs);
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  VerifyReport rep;
  rep.digits = opt.digits;
  rep.rows = std::move(out);
  std::sort(rep.rows.begin(), rep.rows.end(), [](const VerifyRow& l, const VerifyRow& r) { return l.id < r.id; });
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace appell
