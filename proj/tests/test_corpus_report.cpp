#include <doctest.h>

#include <cstdio>

#include "koenigs/corpus.hpp"
#include "koenigs/report.hpp"
#include "koenigs/runner.hpp"
#include "test_helpers.hpp"

using namespace koenigs;
using namespace koenigs::testing;

TEST_CASE("corpus: schema validation") {
  auto entries = parse_corpus_text(R"json([
    {"name": "a", "expr": "(z+1)/2",
     "expected": {"dw": [1.0, 0.0], "type": "hyperbolic", "multiplier": 0.5}}
  ])json");
  REQUIRE(entries.size() == 1);
  CHECK(entries[0].name == "a");
  CHECK(entries[0].expected.has_value());
  CHECK(entries[0].expected->multiplier == 0.5);

  // Unknown fields are rejected with a diagnostic naming them.
  CHECK_THROWS_WITH_AS(
      (void)parse_corpus_text(R"json([{"name": "a", "expr": "z", "bogus": 1}])json"),
      doctest::Contains("unknown field 'bogus'"), Error);
  CHECK_THROWS_AS((void)parse_corpus_text(R"json([{"name": "a", "expr": "z",
      "expected": {"step": "sideways"}}])json"), Error);
  CHECK_THROWS_AS((void)parse_corpus_text(R"json([{"name": "a", "expr": "z^("}])json"), Error);
  CHECK_THROWS_AS((void)parse_corpus_text(R"json({"not": "a list"})json"), Error);
  CHECK_THROWS_AS((void)parse_corpus_text("not json"), Error);
  // Declared invariants: |dw| <= 1, boundary multiplier in (0, 1].
  CHECK_THROWS_AS((void)parse_corpus_text(R"json([{"name": "a", "expr": "z",
      "expected": {"dw": [2.0, 0.0]}}])json"), Error);
  CHECK_THROWS_AS((void)parse_corpus_text(R"json([{"name": "a", "expr": "z",
      "expected": {"dw": [1.0, 0.0], "multiplier": 1.5}}])json"), Error);
  // Duplicate names collide.
  CHECK_THROWS_AS((void)parse_corpus_text(
      R"json([{"name": "a", "expr": "z"}, {"name": "a", "expr": "z"}])json"), Error);
}

TEST_CASE("runner: a small corpus passes its expectations") {
  auto entries = parse_corpus_text(R"json([
    {"name": "affine", "expr": "(z+1)/2",
     "expected": {"dw": [1.0, 0.0], "type": "hyperbolic", "multiplier": 0.5,
                  "step": "positive"}},
    {"name": "interior", "expr": "z/(2-z)",
     "expected": {"dw": [0.0, 0.0], "type": "elliptic", "multiplier": 0.5}}
  ])json");
  CheckConfig cfg;
  CorpusRunResult result = run_corpus_checks(entries, cfg);
  for (const auto& e : result.entries) {
    INFO(e.name << ": " << e.error);
    for (const auto& item : e.items) {
      INFO(item.name << " -> " << item.detail);
      CHECK(item.passed);
    }
    CHECK(e.passed);
  }
  CHECK(result.all_passed);
}

TEST_CASE("runner: a wrong expectation fails") {
  auto entries = parse_corpus_text(R"json([
    {"name": "affine", "expr": "(z+1)/2",
     "expected": {"type": "parabolic"}}
  ])json");
  CorpusRunResult result = run_corpus_checks(entries);
  CHECK_FALSE(result.all_passed);
}

TEST_CASE("json writer: ordered keys, 17-digit floats, stable bytes") {
  auto build = [] {
    Json j = Json::object();
    j.set("tool", Json::str("koenigs"));
    j.set("value", Json::num(1.0 / 3.0));
    j.set("point", Json::cplx(Complex(0.1, -2.5)));
    Json arr = Json::array();
    arr.push(Json::integer(42)).push(Json::boolean(true)).push(Json::null());
    j.set("items", std::move(arr));
    j.set("nested", Json::object().set("k", Json::str("v\n\"quoted\"")));
    return j.dump();
  };
  std::string a = build(), b = build();
  CHECK(a == b);
  CHECK(a.find("0.33333333333333331") != std::string::npos);
  CHECK(a.find("\"tool\": \"koenigs\"") != std::string::npos);
  CHECK(a.find("\\n\\\"quoted\\\"") != std::string::npos);
  // Key order is insertion order.
  CHECK(a.find("tool") < a.find("value"));
  CHECK(a.find("value") < a.find("point"));
}

TEST_CASE("csv writer: fixed columns") {
  CsvWriter csv({"n", "re", "im"});
  csv.row({"0", "0.5", "0"});
  CHECK(csv.text() == "n,re,im\n0,0.5,0\n");
  CHECK_THROWS_AS(csv.row({"too", "few"}), Error);
}
