#include "koenigs/corpus.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "koenigs/parser.hpp"

namespace koenigs {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::Parse, "corpus schema: " + where + ": " + what);
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) schema_error(where, "unknown field '" + it.key() + "'");
}

MapExpr parse_or_fail(const std::string& text, const std::string& where) {
  ParseResult r = parse_map(text);
  if (!r.ok())
    schema_error(where, "expression error at offset " + std::to_string(r.error->offset) + ": " +
                            r.error->message);
  return r.expr;
}

Complex complex_field(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    schema_error(where, "complex values are [re, im] number pairs");
  return Complex(v[0].get<double>(), v[1].get<double>());
}

CorpusExpected parse_expected(const json& v, const std::string& where) {
  if (!v.is_object()) schema_error(where, "'expected' must be an object");
  reject_unknown(v, {"dw", "type", "multiplier", "step", "koenigs_closed_form", "slc_partners"},
                 where);
  CorpusExpected e;
  if (v.contains("dw")) e.dw = complex_field(v["dw"], where + ".dw");
  if (v.contains("type")) {
    if (!v["type"].is_string()) schema_error(where, "'type' must be a string");
    static const std::set<std::string> kTypes{"identity", "elliptic", "elliptic-automorphism",
                                              "hyperbolic", "parabolic"};
    e.type = v["type"].get<std::string>();
    if (!kTypes.count(*e.type)) schema_error(where, "unknown type label '" + *e.type + "'");
  }
  if (v.contains("multiplier")) {
    if (!v["multiplier"].is_number()) schema_error(where, "'multiplier' must be a number");
    e.multiplier = v["multiplier"].get<double>();
  }
  if (v.contains("step")) {
    if (!v["step"].is_string()) schema_error(where, "'step' must be a string");
    e.step = v["step"].get<std::string>();
    if (*e.step != "zero" && *e.step != "positive")
      schema_error(where, "'step' must be \"zero\" or \"positive\"");
  }
  if (v.contains("koenigs_closed_form")) {
    if (!v["koenigs_closed_form"].is_string())
      schema_error(where, "'koenigs_closed_form' must be a string");
    e.koenigs_closed_form_text = v["koenigs_closed_form"].get<std::string>();
    e.koenigs_closed_form = parse_or_fail(*e.koenigs_closed_form_text, where + ".koenigs_closed_form");
  }
  if (v.contains("slc_partners")) {
    if (!v["slc_partners"].is_array()) schema_error(where, "'slc_partners' must be a list");
    int idx = 0;
    for (const auto& p : v["slc_partners"]) {
      std::string pw = where + ".slc_partners[" + std::to_string(idx++) + "]";
      if (!p.is_object()) schema_error(pw, "partners are objects");
      reject_unknown(p, {"expr", "c"}, pw);
      if (!p.contains("expr") || !p["expr"].is_string()) schema_error(pw, "'expr' string required");
      if (!p.contains("c")) schema_error(pw, "'c' required");
      SlcPartner partner;
      partner.expr_text = p["expr"].get<std::string>();
      partner.expr = parse_or_fail(partner.expr_text, pw + ".expr");
      partner.c = complex_field(p["c"], pw + ".c");
      e.slc_partners.push_back(std::move(partner));
    }
  }
  // Invariants on declared expectations.
  if (e.dw && std::abs(*e.dw) > 1.0 + 1e-9) schema_error(where, "|dw| must be <= 1");
  if (e.multiplier && e.dw && std::abs(std::abs(*e.dw) - 1.0) < 1e-9) {
    if (!(*e.multiplier > 0.0 && *e.multiplier <= 1.0 + 1e-6))
      schema_error(where, "boundary multiplier must lie in (0, 1]");
  }
  return e;
}

}  // namespace

std::vector<CorpusEntry> parse_corpus_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("corpus is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw Error(ErrorKind::Parse, "corpus must be a top-level list");
  std::vector<CorpusEntry> entries;
  std::set<std::string> names;
  int idx = 0;
  for (const auto& item : doc) {
    std::string where = "entry[" + std::to_string(idx++) + "]";
    if (!item.is_object()) schema_error(where, "entries are objects");
    reject_unknown(item, {"name", "expr", "expected"}, where);
    if (!item.contains("name") || !item["name"].is_string())
      schema_error(where, "'name' string required");
    if (!item.contains("expr") || !item["expr"].is_string())
      schema_error(where, "'expr' string required");
    CorpusEntry entry;
    entry.name = item["name"].get<std::string>();
    if (!names.insert(entry.name).second) schema_error(where, "duplicate name '" + entry.name + "'");
    where += " '" + entry.name + "'";
    entry.expr_text = item["expr"].get<std::string>();
    entry.expr = parse_or_fail(entry.expr_text, where + ".expr");
    if (item.contains("expected")) entry.expected = parse_expected(item["expected"], where);
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<CorpusEntry> load_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open corpus file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_corpus_text(buf.str());
}

}  // namespace koenigs
