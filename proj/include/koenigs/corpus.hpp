#pragma once

#include <optional>
#include <string>
#include <vector>

#include "koenigs/expr.hpp"

namespace koenigs {

struct SlcPartner {
  std::string expr_text;
  MapExpr expr;
  Complex c{};
};

struct CorpusExpected {
  std::optional<Complex> dw;
  std::optional<std::string> type;
  std::optional<double> multiplier;
  std::optional<std::string> step;  // "zero" | "positive"
  std::optional<std::string> koenigs_closed_form_text;
  MapExpr koenigs_closed_form;      // valid() iff the text is present
  std::vector<SlcPartner> slc_partners;
};

struct CorpusEntry {
  std::string name;
  std::string expr_text;
  MapExpr expr;
  std::optional<CorpusExpected> expected;
};

/// Load and validate corpus.json (UTF-8, a top-level list of entries).
/// Unknown fields and schema violations are rejected with a diagnostic
/// naming the entry and key.
std::vector<CorpusEntry> load_corpus(const std::string& path);
std::vector<CorpusEntry> parse_corpus_text(const std::string& text);

}  // namespace koenigs
