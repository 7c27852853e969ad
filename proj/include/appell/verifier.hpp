#pragma once

#include <optional>
#include <string>
#include <vector>

#include "appell/contiguity.hpp"
#include "appell/identity_db.hpp"
#include "appell/real.hpp"

namespace appell {

enum class Verdict { pass, fail, domain_skipped, conjectural_pass, conjectural_fail };
std::string to_string(Verdict v);

struct VerifyRow {
  std::string id;
  std::string table;        // "1".."5", "conj", "intro"
  std::string status;       // claimed status
  std::string method;
  std::string lhs, rhs;     // printed enclosures (empty when skipped)
  std::string diff_bound;   // upper bound of |lhs - rhs|
  Verdict verdict = Verdict::fail;
  std::string message;
};

/// F(a0+1)/F(a0) for a Table 1 row, numerically, against the exact ratio at a0.
struct RatioCheck {
  Rat a0;
  std::optional<Real> numeric;  // absent when no evaluation route applies
  Real exact;
  bool pass = false;
  std::string method;
};
RatioCheck closed_ratio_numeric_check(const SextupleSpec& s, const Rat& a0, const PrecCtx& ctx);

/// Enclosures must overlap with combined radius <= 10^(-digits+5) * max(1, |value|).
/// Raises working precision (bounded) if the radius is too wide.
VerifyRow verify_identity(const IdentityRecord& rec, const PrecCtx& ctx);

/// Exact certification (hard requirement) plus the numeric ratio at each sample a.
VerifyRow verify_table1_row(const SextupleSpec& s, const PrecCtx& ctx);

struct VerifyOptions {
  std::string table = "all";  // all | 1 | 2 | 3 | 4 | 5 | conj
  std::string filter;         // ECMAScript regex searched in the id; empty matches all
  long digits = 50;
  unsigned jobs = 1;
};

struct VerifyReport {
  static constexpr int kSchemaVersion = 1;
  long digits = 50;
  std::vector<VerifyRow> rows;  // sorted by id
  double wall_seconds = 0;

  long count(Verdict v) const;
  /// 0 when nothing non-conjectural failed, 1 otherwise.
  int exit_code() const;
  std::string to_json() const;
  std::string to_text() const;
};

VerifyReport verify_all(const std::vector<IdentityRecord>& records, const std::vector<SextupleSpec>& rows,
                        const VerifyOptions& opt);

}  // namespace appell
