#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "appell/closed_expr.hpp"

namespace appell {

enum class SeriesKind { f21, f1 };
enum class ClaimStatus { proved, conjectural };

struct IdentityRecord {
  std::string id;
  SeriesKind series = SeriesKind::f21;
  std::vector<Affine> params;  // (a, b, c) or (alpha, beta1, beta2, gamma)
  Rat x, y;                    // y unused for 2F1
  std::optional<Rat> subst_a;
  std::string rhs_text;
  ClosedExpr rhs = ClosedExpr::literal(1);
  ClaimStatus status = ClaimStatus::proved;
  std::string note;
  std::string source;

  bool lhs_depends_on_a() const;
  /// Value of a used for evaluation (0 when nothing depends on a).
  Rat a_value() const { return subst_a.value_or(Rat(0)); }
  /// Parameters with a substituted.
  std::vector<Rat> params_at_a() const;
  /// "2", "3", "4", "5" (by the prime count in the id), "conj", or "intro".
  std::string table() const;
};

/// Array of records: id, series ("2F1"|"F1"), params, x, y (F1 only),
/// subst_a (optional), rhs, status ("proved"|"conjectural"), note, source.
/// Rationals are strings. Whitespace-only text is an empty table.
/// Throws SchemaError naming the offending record.
std::vector<IdentityRecord> parse_identity_table(std::string_view json_text);
std::vector<IdentityRecord> load_identity_table(const std::string& path);

/// Path of the bundled database.
std::string default_identity_table_path();

std::string to_string(ClaimStatus s);
std::string to_string(SeriesKind k);

}  // namespace appell
