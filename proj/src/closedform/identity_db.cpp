#include "appell/identity_db.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "appell/errors.hpp"

namespace appell {

using nlohmann::json;

bool IdentityRecord::lhs_depends_on_a() const {
  for (const Affine& p : params)
    if (!p.is_constant()) return true;
  return false;
}

std::vector<Rat> IdentityRecord::params_at_a() const {
  std::vector<Rat> out;
  Rat a = a_value();
  for (const Affine& p : params) out.push_back(p.at(a));
  return out;
}

std::string IdentityRecord::table() const {
  if (status == ClaimStatus::conjectural) return "conj";
  if (id.find("⁗") != std::string::npos) return "5";
  if (id.find("‴") != std::string::npos) return "4";
  if (id.find("″") != std::string::npos) return "3";
  if (id.find("′") != std::string::npos) return "2";
  return "intro";
}

std::string to_string(ClaimStatus s) { return s == ClaimStatus::proved ? "proved" : "conjectural"; }
std::string to_string(SeriesKind k) { return k == SeriesKind::f21 ? "2F1" : "F1"; }

namespace {

[[noreturn]] void fail(const std::string& id, const std::string& what) {
  throw SchemaError("identity record '" + id + "': " + what);
}

std::string get_string(const json& r, const char* key, const std::string& id, bool required) {
  if (!r.contains(key)) {
    if (required) fail(id, std::string("missing field '") + key + "'");
    return {};
  }
  if (!r[key].is_string()) fail(id, std::string("field '") + key + "' must be a string");
  return r[key].get<std::string>();
}

Rat get_rat(const json& r, const char* key, const std::string& id) {
  std::string s = get_string(r, key, id, true);
  try {
    return parse_rat(s);
  } catch (const Error& e) {
    fail(id, std::string("field '") + key + "': " + e.what());
  }
}

IdentityRecord parse_record(const json& r, std::size_t index) {
  if (!r.is_object()) fail("#" + std::to_string(index), "record must be an object");
  IdentityRecord rec;
  rec.id = get_string(r, "id", "#" + std::to_string(index), true);
  if (rec.id.empty()) fail("#" + std::to_string(index), "empty id");
  const std::string& id = rec.id;

  std::string series = get_string(r, "series", id, true);
  if (series == "2F1") {
    rec.series = SeriesKind::f21;
  } else if (series == "F1") {
    rec.series = SeriesKind::f1;
  } else {
    fail(id, "series must be \"2F1\" or \"F1\"");
  }

  if (!r.contains("params") || !r["params"].is_array()) fail(id, "params must be an array");
  for (const auto& p : r["params"]) {
    if (!p.is_string()) fail(id, "params must be strings");
    try {
      rec.params.push_back(parse_affine(p.get<std::string>()));
    } catch (const ParseError& e) {
      fail(id, "parameter '" + p.get<std::string>() + "': " + e.what());
    }
  }
  std::size_t want = rec.series == SeriesKind::f21 ? 3 : 4;
  if (rec.params.size() != want) fail(id, "expected " + std::to_string(want) + " parameters");

  rec.x = get_rat(r, "x", id);
  if (rec.series == SeriesKind::f1) {
    rec.y = get_rat(r, "y", id);
  } else if (r.contains("y")) {
    fail(id, "2F1 record must not carry y");
  }
  if (r.contains("subst_a")) rec.subst_a = get_rat(r, "subst_a", id);

  rec.rhs_text = get_string(r, "rhs", id, true);
  try {
    rec.rhs = parse_expr(rec.rhs_text);
  } catch (const ParseError& e) {
    fail(id, std::string("rhs: ") + e.what());
  }

  std::string status = get_string(r, "status", id, true);
  if (status == "proved") {
    rec.status = ClaimStatus::proved;
  } else if (status == "conjectural") {
    rec.status = ClaimStatus::conjectural;
  } else {
    fail(id, "status must be \"proved\" or \"conjectural\", got \"" + status + "\"");
  }
  rec.note = get_string(r, "note", id, false);
  rec.source = get_string(r, "source", id, false);

  bool depends = rec.lhs_depends_on_a() || rec.rhs.depends_on_a();
  if (!depends && rec.subst_a) fail(id, "subst_a given but nothing depends on a");
  if (depends && !rec.subst_a) fail(id, "depends on a but has no subst_a");
  return rec;
}

}  // namespace

std::vector<IdentityRecord> parse_identity_table(std::string_view text) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) return {};
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("identity table is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw SchemaError("identity table must be a JSON array");
  std::vector<IdentityRecord> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    IdentityRecord rec = parse_record(doc[i], i);
    if (!seen.insert(rec.id).second) fail(rec.id, "duplicate id");
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<IdentityRecord> load_identity_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open identity table '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_identity_table(ss.str());
}

std::string default_identity_table_path() { return std::string(APPELL_DATA_DIR) + "/identities.json"; }

}  // namespace appell
