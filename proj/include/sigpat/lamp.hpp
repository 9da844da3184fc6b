#pragma once

#include <vector>

#include "sigpat/common.hpp"
#include "sigpat/miner.hpp"
#include "sigpat/stats.hpp"
#include "sigpat/transaction_db.hpp"

namespace sigpat {

enum class SearchStrategy { incremental, decremental, brute_force };
enum class PValueTail { one_tailed, two_tailed };

const char* to_string(SearchStrategy s) noexcept;
const char* to_string(PValueTail t) noexcept;

/// Outcome of the root-frequency search. sigma_rt is the smallest support
/// threshold at which the number of frequent patterns no longer exceeds
/// alpha / psi(sigma); num_testable = |{S : x_S >= sigma_rt}| is the
/// Bonferroni correction factor and delta = alpha / num_testable the
/// corrected per-test threshold.
struct TaroneResult {
  Count sigma_rt = 0;
  PatternCount num_testable = 0;
  LogProb delta;  // zero() when num_testable == 0 (no tests are run)
  double alpha = 0.0;
  Count miner_invocations = 0;
  SearchStrategy strategy = SearchStrategy::incremental;
};

/// Incremental search with early stopping: sigma = 1, 2, ... with each
/// mining run aborted as soon as its count exceeds alpha / psi(sigma).
/// Performs exactly sigma_rt miner invocations.
TaroneResult incremental_search(const TransactionDatabase& db, Count n,
                                double alpha, unsigned threads = 1);

/// Decremental search: sigma = n, n-1, ... with full (uncapped) enumeration
/// at each step, stopping one past the first over-full sigma. Performs
/// n - sigma_rt + 2 miner invocations on the usual exit path. When even
/// sigma = n is over-full the crossing lies above n and the search continues
/// upward so that the definitional inequalities always hold.
TaroneResult decremental_search(const TransactionDatabase& db, Count n,
                                double alpha, unsigned threads = 1);

/// Small-instance oracle: supports of every non-empty subset by row scans,
/// then the root frequency straight from its definition. Refuses P > 20.
TaroneResult brute_force_root(const TransactionDatabase& db, Count n,
                              double alpha);

TaroneResult run_search(const TransactionDatabase& db, Count n, double alpha,
                        SearchStrategy strategy, unsigned threads = 1);

struct SignificantPattern {
  std::vector<Count> items;  // sorted dense item ids
  Count support = 0;         // x_S
  Count positive_count = 0;  // a_S
  LogProb p_value;
};

struct SignificanceReport {
  TaroneResult tarone;
  /// Patterns with p <= delta, sorted by ascending p-value then
  /// lexicographically by items.
  std::vector<SignificantPattern> patterns;
  /// num_testable was 0: nothing could be tested (not an error).
  bool no_testable_hypotheses = false;
};

/// Full pipeline: root-frequency search, enumeration of the testable
/// patterns, Fisher exact test of each against the corrected threshold.
/// Labels must be real (not synthetic-ratio placeholders).
SignificanceReport find_significant(const TransactionDatabase& db,
                                    const LabelVector& labels, double alpha,
                                    SearchStrategy strategy,
                                    PValueTail tail = PValueTail::one_tailed,
                                    unsigned threads = 1);

}  // namespace sigpat
