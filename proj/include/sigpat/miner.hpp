#pragma once

#include <functional>
#include <span>
#include <vector>

#include "sigpat/bitset.hpp"
#include "sigpat/common.hpp"
#include "sigpat/transaction_db.hpp"

namespace sigpat {

/// Enumeration budget: stop counting once more than `cap` frequent itemsets
/// have been found. Unbounded budgets enumerate everything.
class MinerBudget {
 public:
  static MinerBudget unbounded() { return MinerBudget(); }
  static MinerBudget capped(PatternCount cap) {
    MinerBudget b;
    b.cap_ = cap;
    b.has_cap_ = true;
    return b;
  }

  bool is_unbounded() const noexcept { return !has_cap_; }
  PatternCount cap() const noexcept { return cap_; }

 private:
  PatternCount cap_ = 0;
  bool has_cap_ = false;
};

struct FrequentItemset {
  std::vector<Count> items;  // sorted dense item ids
  Count support = 0;
};

struct MineResult {
  /// Exact number of frequent itemsets when stopped_early is false. When
  /// stopped early the value is merely "the count at abort" (> cap) and may
  /// vary with thread scheduling; callers must use only the boolean.
  PatternCount count = 0;
  /// True iff the true count exceeds the budget. Deterministic regardless of
  /// enumeration order or thread count.
  bool stopped_early = false;
  /// The running count overflowed 64 bits (astronomically many itemsets);
  /// `count` is clamped and only usable as "more than any cap".
  bool count_saturated = false;
  /// Node expansions performed; proportional to min(cap + 1, total) plus the
  /// per-node candidate scans. Diagnostic for the early-stopping work bound.
  std::uint64_t expansions = 0;
};

/// Sink invoked once per frequent itemset with its sorted items, support and
/// covering transaction set. May be called concurrently when threads > 1; the
/// spans/references are only valid for the duration of the call.
using ItemsetSink =
    std::function<void(std::span<const Count>, Count, const TidBitset&)>;

/// Counts itemsets with support >= sigma, stopping early once the count
/// exceeds the budget. sigma must be >= 1 (sigma = 0 would enumerate all
/// 2^P - 1 subsets, including unsupported ones).
MineResult mine_count_capped(const TransactionDatabase& db, Count sigma,
                             MinerBudget budget, unsigned threads = 1);

/// Streams every itemset with support >= sigma exactly once (order
/// unspecified, set deterministic). Returns the same totals as an unbounded
/// mine_count_capped.
MineResult mine_enumerate(const TransactionDatabase& db, Count sigma,
                          const ItemsetSink& sink, unsigned threads = 1);

/// Convenience for tests: collect and sort lexicographically.
std::vector<FrequentItemset> mine_collect(const TransactionDatabase& db,
                                          Count sigma, unsigned threads = 1);

}  // namespace sigpat
