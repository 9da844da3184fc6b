#include "sigpat/transaction_db.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>
#include <unordered_map>

namespace sigpat {

namespace {

// Dense remapping adds 1 to the maximum id, so the last id is reserved.
constexpr Count kMaxItemId = std::numeric_limits<Count>::max() - 1;

std::vector<Count> parse_line_items(const std::string& line,
                                    std::size_t line_no) {
  std::vector<Count> items;
  const char* p = line.data();
  const char* end = p + line.size();
  while (p != end) {
    if (*p == ' ' || *p == '\t' || *p == '\r') {
      ++p;
      continue;
    }
    Count value = 0;
    auto [next, ec] = std::from_chars(p, end, value);
    if (ec == std::errc() && value > kMaxItemId) {
      ec = std::errc::result_out_of_range;
    }
    if (ec != std::errc() ||
        (next != end && *next != ' ' && *next != '\t' && *next != '\r')) {
      throw ParseError("expected a non-negative integer item id, got '" +
                           std::string(p, std::min<std::size_t>(
                                              16, static_cast<std::size_t>(
                                                      end - p))) +
                           "'",
                       line_no);
    }
    items.push_back(value);
    p = next;
  }
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return items;
}

}  // namespace

TransactionDatabase TransactionDatabase::parse_fimi(std::istream& in,
                                                    bool remap_dense) {
  std::vector<std::vector<Count>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    rows.push_back(parse_line_items(line, line_no));
  }

  if (!remap_dense) return from_rows(std::move(rows));

  std::vector<Count> ids;
  for (const auto& row : rows) ids.insert(ids.end(), row.begin(), row.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::unordered_map<Count, Count> dense;
  dense.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    dense.emplace(ids[i], static_cast<Count>(i));
  }
  for (auto& row : rows) {
    for (Count& item : row) item = dense.at(item);
  }
  const Count num_items = static_cast<Count>(ids.size());
  return from_rows_with_universe(std::move(rows), num_items, std::move(ids));
}

TransactionDatabase TransactionDatabase::from_rows(
    std::vector<std::vector<Count>> rows) {
  Count max_id = 0;
  bool any = false;
  for (auto& row : rows) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    if (!row.empty()) {
      max_id = std::max(max_id, row.back());
      any = true;
    }
  }
  const Count num_items = any ? max_id + 1 : 0;
  std::vector<Count> external(num_items);
  std::iota(external.begin(), external.end(), 0u);
  return from_rows_with_universe(std::move(rows), num_items,
                                 std::move(external));
}

TransactionDatabase TransactionDatabase::from_rows_with_universe(
    std::vector<std::vector<Count>> rows, Count num_items,
    std::vector<Count> external_ids) {
  TransactionDatabase db;
  db.num_transactions_ = static_cast<Count>(rows.size());
  db.num_items_ = num_items;
  db.rows_ = std::move(rows);
  db.external_ids_ = std::move(external_ids);
  for (auto& row : db.rows_) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    if (!row.empty() && row.back() >= num_items) {
      throw std::domain_error("transaction references item id " +
                              std::to_string(row.back()) +
                              " outside the " +
                              std::to_string(num_items) + "-item universe");
    }
  }
  db.build_occurrences();
  return db;
}

void TransactionDatabase::build_occurrences() {
  occurrences_.assign(num_items_, {});
  for (std::size_t tx = 0; tx < rows_.size(); ++tx) {
    for (Count item : rows_[tx]) {
      occurrences_[item].push_back(static_cast<Count>(tx));
    }
  }
}

const std::vector<Count>& TransactionDatabase::occurrences(Count item) const {
  if (item >= num_items_) {
    throw std::domain_error("unknown item id " + std::to_string(item) +
                            " (P = " + std::to_string(num_items_) + ")");
  }
  return occurrences_[item];
}

Count TransactionDatabase::pattern_support(std::span<const Count> items) const {
  if (items.empty()) return num_transactions_;
  for (Count item : items) {
    if (item >= num_items_) {
      throw std::domain_error("unknown item id " + std::to_string(item));
    }
  }
  // Intersect starting from the rarest item.
  std::vector<Count> order(items.begin(), items.end());
  std::sort(order.begin(), order.end(), [&](Count a, Count b) {
    return occurrences_[a].size() < occurrences_[b].size();
  });
  std::vector<Count> acc = occurrences_[order[0]];
  std::vector<Count> next;
  for (std::size_t i = 1; i < order.size() && !acc.empty(); ++i) {
    const auto& occ = occurrences_[order[i]];
    next.clear();
    std::set_intersection(acc.begin(), acc.end(), occ.begin(), occ.end(),
                          std::back_inserter(next));
    acc.swap(next);
  }
  return static_cast<Count>(acc.size());
}

Count TransactionDatabase::max_support() const noexcept {
  Count best = 0;
  for (const auto& occ : occurrences_) {
    best = std::max(best, static_cast<Count>(occ.size()));
  }
  return best;
}

void TransactionDatabase::write_fimi(std::ostream& out) const {
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i != 0) out << ' ';
      out << external_ids_[row[i]];
    }
    out << '\n';
  }
}

LabelVector LabelVector::parse(std::istream& in, Count expected_rows) {
  std::vector<std::uint8_t> bits;
  bits.reserve(expected_rows);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
      line.pop_back();
    }
    if (line == "0") {
      bits.push_back(0);
    } else if (line == "1") {
      bits.push_back(1);
    } else {
      throw ParseError("expected '0' or '1', got '" + line + "'", line_no);
    }
    if (bits.size() > expected_rows) break;
  }
  if (bits.size() != expected_rows) {
    throw ParseError("label count " + std::to_string(bits.size()) +
                         " does not match transaction count " +
                         std::to_string(expected_rows),
                     line_no + 1);
  }
  return from_bits(bits);
}

LabelVector LabelVector::from_bits(const std::vector<std::uint8_t>& bits) {
  Count ones = 0;
  for (std::uint8_t b : bits) ones += (b != 0);
  const Count total = static_cast<Count>(bits.size());
  const Count zeros = total - ones;
  const Count n = std::min(ones, zeros);
  if (n == 0) {
    throw DegenerateDataError(
        "degenerate labels: n=0 (every minimum attainable p-value is 1)");
  }
  LabelVector lv;
  lv.n_ = n;
  lv.swapped_ = ones > zeros;
  lv.canonical_.resize(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const bool one = bits[i] != 0;
    lv.canonical_[i] = (one != lv.swapped_) ? 1 : 0;
  }
  return lv;
}

LabelVector LabelVector::synthetic_ratio(Count num_transactions, Count ratio) {
  if (ratio < 2) {
    throw std::domain_error(
        "ratio must be >= 2 so the positive class is the minority");
  }
  const Count n = num_transactions / ratio;
  if (n == 0) {
    throw DegenerateDataError("ratio labels degenerate: floor(N/r) = 0");
  }
  LabelVector lv;
  lv.n_ = n;
  lv.synthetic_ = true;
  lv.canonical_.assign(num_transactions, 0);
  for (Count i = 0; i < n; ++i) lv.canonical_[i] = 1;
  return lv;
}

std::vector<Count> LabelVector::positive_transactions() const {
  std::vector<Count> out;
  out.reserve(n_);
  for (std::size_t i = 0; i < canonical_.size(); ++i) {
    if (canonical_[i]) out.push_back(static_cast<Count>(i));
  }
  return out;
}

}  // namespace sigpat
