#pragma once

#include <string>
#include <vector>

#include "koenigs/corpus.hpp"
#include "koenigs/linearize.hpp"

namespace koenigs {

/// Tolerances for expected-value checks over a corpus.
struct CheckConfig {
  double dw_tol = 1e-6;
  double multiplier_tol = 1e-4;
  double koenigs_oracle_tol = 0.05;   // max |b_n - oracle| on the oracle grid
  int koenigs_oracle_depth = 2048;
  GridSpec oracle_grid{64, 0.5, true};
  double slc_koenigs_tol = 1e-5;
  double slc_angular_tol = 1e-3;
  LinearizeConfig linearize{};
};

struct CheckItem {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct EntryCheckResult {
  std::string name;
  bool passed = true;
  std::string error;  // non-empty when the entry failed with an exception
  std::string error_code;
  std::vector<CheckItem> items;
};

struct CorpusRunResult {
  std::vector<EntryCheckResult> entries;
  bool all_passed = true;
};

/// Run every expected-value check of every entry.  Entries are sharded
/// across KOENIGS_THREADS workers (default: hardware concurrency) and the
/// results are assembled in corpus order.
CorpusRunResult run_corpus_checks(const std::vector<CorpusEntry>& entries,
                                  const CheckConfig& cfg = {});

EntryCheckResult run_entry_checks(const CorpusEntry& entry, const CheckConfig& cfg = {});

}  // namespace koenigs
