#include "sigpat/miner.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace sigpat {

namespace {

constexpr PatternCount kSaturated = std::numeric_limits<PatternCount>::max();

// The search runs depth-first over a lexicographic set-enumeration tree in
// ascending-support item order. Candidate items whose conditional support
// equals the node's support ("full" extensions) are not branched on: every
// subset of the accumulated full items extends any node of the subtree
// without changing its transaction set, so a node with f full items on its
// path stands for a family of 2^f itemsets. Counting adds the family size in
// one step; enumeration expands the subsets explicitly.
struct Shared {
  std::vector<TidBitset> item_bits;  // per slot
  std::vector<Count> slot_item;      // slot -> dense item id
  Count sigma = 0;
  bool has_cap = false;
  PatternCount cap = 0;
  const ItemsetSink* sink = nullptr;

  std::atomic<PatternCount> count{0};
  std::atomic<std::uint64_t> expansions{0};
  std::atomic<bool> aborted{false};
  std::atomic<bool> saturated{false};

  void add(PatternCount delta) {
    const PatternCount prev = count.fetch_add(delta, std::memory_order_relaxed);
    const PatternCount now = prev + delta;
    if (now < prev || delta == kSaturated) {
      saturated.store(true, std::memory_order_relaxed);
      count.store(kSaturated, std::memory_order_relaxed);
      aborted.store(true, std::memory_order_relaxed);
      return;
    }
    if (has_cap && now > cap) {
      aborted.store(true, std::memory_order_relaxed);
    }
  }

  bool should_stop() const {
    return aborted.load(std::memory_order_relaxed);
  }
};

class Worker {
 public:
  Worker(Shared& shared, Count num_tx, std::size_t max_depth)
      : s_(shared), levels_(max_depth + 2) {
    for (auto& lv : levels_) lv.tids = TidBitset(num_tx);
  }

  std::vector<Count>& spine() { return spine_; }
  std::vector<Count>& free_items() { return free_; }
  TidBitset& level_tids(std::size_t depth) { return levels_[depth].tids; }

  // Expands the node whose itemset family is spine_ x subsets(free_). The
  // node's tidset/support and its candidate slots are supplied by the caller;
  // free items discovered here are pushed for the whole subtree and popped on
  // exit.
  void visit(const TidBitset& tids, Count sup, std::span<const Count> cands,
             std::size_t depth) {
    if (s_.should_stop()) return;
    s_.expansions.fetch_add(1, std::memory_order_relaxed);

    Level& lv = levels_[depth];
    lv.branch_slots.clear();
    lv.branch_sups.clear();
    const std::size_t free_mark = free_.size();
    for (Count slot : cands) {
      const Count c = TidBitset::and_count(tids, s_.item_bits[slot]);
      if (c < s_.sigma) continue;
      if (c == sup) {
        free_.push_back(s_.slot_item[slot]);
      } else {
        lv.branch_slots.push_back(slot);
        lv.branch_sups.push_back(c);
      }
    }

    emit_family(tids, sup);

    if (!s_.should_stop()) {
      for (std::size_t i = 0; i < lv.branch_slots.size(); ++i) {
        if (s_.should_stop()) break;
        const Count slot = lv.branch_slots[i];
        Level& next = levels_[depth + 1];
        next.tids.assign_and(tids, s_.item_bits[slot]);
        spine_.push_back(s_.slot_item[slot]);
        visit(next.tids, lv.branch_sups[i],
              std::span<const Count>(lv.branch_slots).subspan(i + 1),
              depth + 1);
        spine_.pop_back();
      }
    }
    free_.resize(free_mark);
  }

  // Counts (and optionally streams) the family of the current node: the
  // spine extended by every subset of the free items. The empty subset is
  // skipped at the root, where the spine itself is the empty pattern.
  void emit_family(const TidBitset& tids, Count sup) {
    const bool root = spine_.empty();
    const std::size_t f = free_.size();
    PatternCount family = kSaturated;
    if (f < 63) family = PatternCount{1} << f;

    if (s_.sink != nullptr) {
      if (f > 62) {
        throw std::runtime_error(
            "mine_enumerate: itemset family of 2^" + std::to_string(f) +
            " equal-support extensions is too large to expand");
      }
      for (PatternCount mask = root ? 1 : 0; mask < family; ++mask) {
        emit_.assign(spine_.begin(), spine_.end());
        for (std::size_t b = 0; b < f; ++b) {
          if ((mask >> b) & 1) emit_.push_back(free_[b]);
        }
        std::sort(emit_.begin(), emit_.end());
        (*s_.sink)(emit_, sup, tids);
      }
    }

    PatternCount contribution = family;
    if (contribution != kSaturated && root) contribution -= 1;
    if (contribution != 0) s_.add(contribution);
  }

 private:
  struct Level {
    TidBitset tids;
    std::vector<Count> branch_slots;
    std::vector<Count> branch_sups;
  };

  Shared& s_;
  std::vector<Level> levels_;
  std::vector<Count> spine_;
  std::vector<Count> free_;
  std::vector<Count> emit_;
};

MineResult mine_impl(const TransactionDatabase& db, Count sigma,
                     MinerBudget budget, const ItemsetSink* sink,
                     unsigned threads) {
  if (sigma == 0) {
    throw std::domain_error(
        "mining with sigma = 0 would enumerate all 2^P - 1 subsets, "
        "including unsupported ones");
  }
  const Count num_tx = db.num_transactions();

  Shared s;
  s.sigma = sigma;
  s.has_cap = !budget.is_unbounded();
  s.cap = budget.cap();
  s.sink = sink;

  // Frequent singletons in ascending (support, id) order; this is the global
  // branch order of the search tree.
  std::vector<std::pair<Count, Count>> freq;
  for (Count item = 0; item < db.num_items(); ++item) {
    const Count sup = db.support(item);
    if (sup >= sigma) freq.emplace_back(sup, item);
  }
  std::sort(freq.begin(), freq.end());

  s.item_bits.assign(freq.size(), TidBitset(num_tx));
  s.slot_item.resize(freq.size());
  std::size_t max_row = 0;
  for (const auto& row : db.rows()) max_row = std::max(max_row, row.size());
  for (std::size_t slot = 0; slot < freq.size(); ++slot) {
    s.slot_item[slot] = freq[slot].second;
    for (Count tx : db.occurrences(freq[slot].second)) {
      s.item_bits[slot].set(tx);
    }
  }

  // Root step, single-threaded: classify the singletons and emit the root
  // family (subsets of items present in every transaction).
  TidBitset root_tids(num_tx);
  root_tids.set_first(num_tx);
  std::vector<Count> root_branch;
  std::vector<Count> root_branch_sup;
  std::vector<Count> root_free;
  for (std::size_t slot = 0; slot < freq.size(); ++slot) {
    if (freq[slot].first == num_tx) {
      root_free.push_back(freq[slot].second);
    } else {
      root_branch.push_back(static_cast<Count>(slot));
      root_branch_sup.push_back(freq[slot].first);
    }
  }
  s.expansions.fetch_add(1, std::memory_order_relaxed);
  {
    Worker root_worker(s, num_tx, 1);
    root_worker.free_items() = root_free;
    root_worker.emit_family(root_tids, num_tx);
  }

  const auto run_branches = [&](std::atomic<std::size_t>& next_task) {
    Worker w(s, num_tx, max_row);
    while (!s.should_stop()) {
      const std::size_t i =
          next_task.fetch_add(1, std::memory_order_relaxed);
      if (i >= root_branch.size()) break;
      const Count slot = root_branch[i];
      w.free_items() = root_free;
      w.spine().assign(1, s.slot_item[slot]);
      TidBitset& tids = w.level_tids(1);
      tids.assign_and(root_tids, s.item_bits[slot]);
      w.visit(tids, root_branch_sup[i],
              std::span<const Count>(root_branch).subspan(i + 1), 1);
    }
  };

  std::atomic<std::size_t> next_task{0};
  const unsigned workers =
      std::max(1u, std::min<unsigned>(threads,
                                      static_cast<unsigned>(
                                          std::max<std::size_t>(
                                              root_branch.size(), 1))));
  if (workers <= 1) {
    run_branches(next_task);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr error;
    std::mutex error_mutex;
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        try {
          run_branches(next_task);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          s.aborted.store(true, std::memory_order_relaxed);
        }
      });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  }

  MineResult res;
  res.count_saturated = s.saturated.load();
  res.count = res.count_saturated ? kSaturated : s.count.load();
  res.stopped_early = s.has_cap && (res.count_saturated || res.count > s.cap);
  res.expansions = s.expansions.load();
  return res;
}

}  // namespace

MineResult mine_count_capped(const TransactionDatabase& db, Count sigma,
                             MinerBudget budget, unsigned threads) {
  return mine_impl(db, sigma, budget, nullptr, threads);
}

MineResult mine_enumerate(const TransactionDatabase& db, Count sigma,
                          const ItemsetSink& sink, unsigned threads) {
  return mine_impl(db, sigma, MinerBudget::unbounded(), &sink, threads);
}

std::vector<FrequentItemset> mine_collect(const TransactionDatabase& db,
                                          Count sigma, unsigned threads) {
  std::vector<FrequentItemset> out;
  std::mutex mutex;
  mine_enumerate(
      db, sigma,
      [&](std::span<const Count> items, Count support, const TidBitset&) {
        std::lock_guard<std::mutex> lock(mutex);
        out.push_back({{items.begin(), items.end()}, support});
      },
      threads);
  std::sort(out.begin(), out.end(),
            [](const FrequentItemset& a, const FrequentItemset& b) {
              return a.items < b.items;
            });
  return out;
}

}  // namespace sigpat
