#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "sigpat/common.hpp"

namespace sigpat {

/// In-memory transaction database: N transactions over P items, stored both
/// row-wise (sorted, deduplicated item lists) and column-wise (per-item
/// ordered occurrence lists for intersection-based support counting).
/// Immutable after construction; freely shareable across threads.
class TransactionDatabase {
 public:
  TransactionDatabase() = default;

  /// Parses the FIMI format: one transaction per line, whitespace-separated
  /// decimal item ids; blank lines are kept as empty transactions. Duplicate
  /// items within a line are dropped. With remap_dense the (possibly sparse)
  /// ids are renumbered 0..P-1 in ascending id order and the original ids are
  /// retained as the external id map; otherwise P = max id + 1.
  static TransactionDatabase parse_fimi(std::istream& in,
                                        bool remap_dense = false);

  /// Builds a database from raw rows (ids need not be sorted or unique).
  static TransactionDatabase from_rows(std::vector<std::vector<Count>> rows);

  /// Builds from rows over an existing item universe (used by subsampling so
  /// the drawn database keeps the parent's item space and id map).
  static TransactionDatabase from_rows_with_universe(
      std::vector<std::vector<Count>> rows, Count num_items,
      std::vector<Count> external_ids);

  Count num_transactions() const noexcept { return num_transactions_; }
  Count num_items() const noexcept { return num_items_; }

  const std::vector<std::vector<Count>>& rows() const noexcept { return rows_; }

  const std::vector<Count>& occurrences(Count item) const;
  Count support(Count item) const { return static_cast<Count>(occurrences(item).size()); }

  /// Number of transactions containing every item of the pattern (the column
  /// marginal x_S). The empty pattern occurs in every transaction.
  Count pattern_support(std::span<const Count> items) const;

  /// Largest singleton support (0 for an empty or item-free database).
  Count max_support() const noexcept;

  Count external_id(Count dense_item) const { return external_ids_.at(dense_item); }
  const std::vector<Count>& external_ids() const noexcept { return external_ids_; }

  /// Writes FIMI text using external ids; parse(write(db)) == db.
  void write_fimi(std::ostream& out) const;

  bool operator==(const TransactionDatabase& other) const = default;

 private:
  void build_occurrences();

  Count num_transactions_ = 0;
  Count num_items_ = 0;
  std::vector<std::vector<Count>> rows_;
  std::vector<std::vector<Count>> occurrences_;
  std::vector<Count> external_ids_;
};

/// Binary class labels, canonicalized so the designated positive class is the
/// minority (n <= N - n); the swap is recorded so reported cell counts stay
/// interpretable.
class LabelVector {
 public:
  /// One '0' or '1' per line, exactly expected_rows lines.
  static LabelVector parse(std::istream& in, Count expected_rows);

  static LabelVector from_bits(const std::vector<std::uint8_t>& bits);

  /// Placeholder labels fixing only the class ratio: n = floor(N / ratio),
  /// first n transactions positive. Usable for testability enumeration only,
  /// never for p-value computation.
  static LabelVector synthetic_ratio(Count num_transactions, Count ratio);

  Count size() const noexcept { return static_cast<Count>(canonical_.size()); }
  Count n() const noexcept { return n_; }
  bool swapped() const noexcept { return swapped_; }
  bool synthetic() const noexcept { return synthetic_; }
  /// True when n == N - n exactly; either orientation is then valid and the
  /// minimum-p-value precondition n < N - n holds only with equality.
  bool balanced_tie() const noexcept {
    return 2 * static_cast<std::uint64_t>(n_) == size();
  }

  bool positive(Count tx) const { return canonical_.at(tx) != 0; }
  std::vector<Count> positive_transactions() const;

 private:
  std::vector<std::uint8_t> canonical_;  // 1 = canonical (minority) positive
  Count n_ = 0;
  bool swapped_ = false;
  bool synthetic_ = false;
};

}  // namespace sigpat
