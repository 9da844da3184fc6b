#include "sigpat/lamp.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

namespace sigpat {

const char* to_string(SearchStrategy s) noexcept {
  switch (s) {
    case SearchStrategy::incremental: return "incremental";
    case SearchStrategy::decremental: return "decremental";
    case SearchStrategy::brute_force: return "brute-force";
  }
  return "?";
}

const char* to_string(PValueTail t) noexcept {
  return t == PValueTail::one_tailed ? "one" : "two";
}

namespace {

void check_search_inputs(const TransactionDatabase& db, Count n,
                         double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }
  const Count N = db.num_transactions();
  if (n == 0) {
    throw DegenerateDataError(
        "degenerate labels: n=0 (every minimum attainable p-value is 1)");
  }
  if (n > N || n > N - n) {
    throw std::domain_error("n must be the minority class size (n <= N - n)");
  }
}

// Threshold comparisons "m > alpha / psi(sigma)" are evaluated in log space:
// ln m > ln alpha - ln psi(sigma). Both sides come from the shared
// log-factorial table, so ties are bit-reproducible. The comparison is
// delegated to the miner as an integer cap: the largest m whose log does not
// exceed the bound.
struct BoundContext {
  const LogFactorialTable& lf;
  Count n;
  Count N;
  double log_alpha;

  PatternCount cap_for(Count sigma) const {
    return count_threshold_from_log(
        log_alpha - min_attainable_pvalue(lf, sigma, n, N).log());
  }

  LogProb delta_for(PatternCount num_testable) const {
    if (num_testable == 0) return LogProb::zero();
    return LogProb::from_log(log_alpha -
                             std::log(static_cast<double>(num_testable)));
  }
};

TaroneResult incremental_impl(const TransactionDatabase& db,
                              const BoundContext& ctx, double alpha,
                              unsigned threads) {
  TaroneResult result;
  result.alpha = alpha;
  result.strategy = SearchStrategy::incremental;
  const Count sigma_stop = db.num_transactions() + 1;
  for (Count sigma = 1;; ++sigma) {
    const MineResult mined = mine_count_capped(
        db, sigma, MinerBudget::capped(ctx.cap_for(sigma)), threads);
    ++result.miner_invocations;
    if (!mined.stopped_early) {
      result.sigma_rt = sigma;
      result.num_testable = mined.count;
      break;
    }
    if (sigma > sigma_stop) {
      throw std::logic_error("incremental search failed to terminate");
    }
  }
  result.delta = ctx.delta_for(result.num_testable);
  return result;
}

TaroneResult decremental_impl(const TransactionDatabase& db,
                              const BoundContext& ctx, double alpha,
                              unsigned threads) {
  TaroneResult result;
  result.alpha = alpha;
  result.strategy = SearchStrategy::decremental;
  const Count n = ctx.n;
  PatternCount previous_count = 0;
  for (Count sigma = n;; --sigma) {
    const MineResult mined =
        mine_count_capped(db, sigma, MinerBudget::unbounded(), threads);
    ++result.miner_invocations;
    const bool over_full =
        mined.count_saturated || mined.count > ctx.cap_for(sigma);
    if (!over_full) {
      if (sigma == 1) {
        // sigma cannot drop below 1; the definition's lower inequality is
        // vacuous there and sigma_rt = 1.
        result.sigma_rt = 1;
        result.num_testable = mined.count;
        break;
      }
      previous_count = mined.count;
      continue;
    }
    if (sigma == n) {
      // Over-full already at the first test: the crossing lies above n,
      // where psi is the constant 1/C(N,n). Verify upward (cheap, capped)
      // so the returned result always satisfies the definition.
      for (Count up = n + 1;; ++up) {
        const MineResult verify = mine_count_capped(
            db, up, MinerBudget::capped(ctx.cap_for(up)), threads);
        ++result.miner_invocations;
        if (!verify.stopped_early) {
          result.sigma_rt = up;
          result.num_testable = verify.count;
          break;
        }
      }
    } else {
      result.sigma_rt = sigma + 1;
      result.num_testable = previous_count;
    }
    break;
  }
  result.delta = ctx.delta_for(result.num_testable);
  return result;
}

}  // namespace

TaroneResult incremental_search(const TransactionDatabase& db, Count n,
                                double alpha, unsigned threads) {
  check_search_inputs(db, n, alpha);
  const LogFactorialTable lf(db.num_transactions());
  const BoundContext ctx{lf, n, db.num_transactions(), std::log(alpha)};
  return incremental_impl(db, ctx, alpha, threads);
}

TaroneResult decremental_search(const TransactionDatabase& db, Count n,
                                double alpha, unsigned threads) {
  check_search_inputs(db, n, alpha);
  const LogFactorialTable lf(db.num_transactions());
  const BoundContext ctx{lf, n, db.num_transactions(), std::log(alpha)};
  return decremental_impl(db, ctx, alpha, threads);
}

TaroneResult brute_force_root(const TransactionDatabase& db, Count n,
                              double alpha) {
  check_search_inputs(db, n, alpha);
  const Count P = db.num_items();
  if (P > 20) {
    throw std::domain_error(
        "brute_force_root enumerates all 2^P - 1 subsets and refuses P > 20 "
        "(P = " + std::to_string(P) + ")");
  }
  const Count N = db.num_transactions();
  const LogFactorialTable lf(N);
  const BoundContext ctx{lf, n, N, std::log(alpha)};

  std::vector<std::uint32_t> row_masks;
  row_masks.reserve(db.rows().size());
  for (const auto& row : db.rows()) {
    std::uint32_t mask = 0;
    for (Count item : row) mask |= 1u << item;
    row_masks.push_back(mask);
  }

  // Histogram of subset supports via plain row scans.
  std::vector<PatternCount> count_with_support(static_cast<std::size_t>(N) + 2,
                                               0);
  const std::uint32_t num_subsets =
      P == 0 ? 0 : ((1u << P) - 1);
  for (std::uint32_t subset = 1; subset <= num_subsets && P > 0; ++subset) {
    Count support = 0;
    for (std::uint32_t mask : row_masks) {
      if ((mask & subset) == subset) ++support;
    }
    ++count_with_support[support];
  }
  std::vector<PatternCount> count_at_least(static_cast<std::size_t>(N) + 2, 0);
  PatternCount running = 0;
  for (Count sigma = N + 1;; --sigma) {
    running += count_with_support[sigma];
    count_at_least[sigma] = running;
    if (sigma == 0) break;
  }

  TaroneResult result;
  result.alpha = alpha;
  result.strategy = SearchStrategy::brute_force;
  result.miner_invocations = 0;
  for (Count sigma = 1; sigma <= N + 1; ++sigma) {
    if (count_at_least[sigma] <= ctx.cap_for(sigma)) {
      result.sigma_rt = sigma;
      result.num_testable = count_at_least[sigma];
      break;
    }
  }
  result.delta = ctx.delta_for(result.num_testable);
  return result;
}

TaroneResult run_search(const TransactionDatabase& db, Count n, double alpha,
                        SearchStrategy strategy, unsigned threads) {
  switch (strategy) {
    case SearchStrategy::incremental:
      return incremental_search(db, n, alpha, threads);
    case SearchStrategy::decremental:
      return decremental_search(db, n, alpha, threads);
    case SearchStrategy::brute_force:
      return brute_force_root(db, n, alpha);
  }
  throw std::invalid_argument("unknown search strategy");
}

SignificanceReport find_significant(const TransactionDatabase& db,
                                    const LabelVector& labels, double alpha,
                                    SearchStrategy strategy, PValueTail tail,
                                    unsigned threads) {
  if (labels.size() != db.num_transactions()) {
    throw std::invalid_argument("label count does not match the database");
  }
  if (labels.synthetic()) {
    throw std::invalid_argument(
        "synthetic ratio labels fix only n and cannot be significance-tested");
  }
  const Count n = labels.n();
  const Count N = db.num_transactions();

  SignificanceReport report;
  report.tarone = run_search(db, n, alpha, strategy, threads);
  if (report.tarone.num_testable == 0) {
    report.no_testable_hypotheses = true;
    return report;
  }

  TidBitset positive(N);
  for (Count tx : labels.positive_transactions()) positive.set(tx);

  const LogFactorialTable lf(N);
  const LogProb delta = report.tarone.delta;
  std::mutex collect_mutex;
  mine_enumerate(
      db, report.tarone.sigma_rt,
      [&](std::span<const Count> items, Count support, const TidBitset& tids) {
        const Count a = TidBitset::and_count(tids, positive);
        const ContingencyTable table{a, support, n, N};
        const LogProb p = tail == PValueTail::one_tailed
                              ? fisher_pvalue_one_tailed(lf, table)
                              : fisher_pvalue_two_tailed(lf, table);
        if (p <= delta) {
          std::lock_guard<std::mutex> lock(collect_mutex);
          report.patterns.push_back(
              {{items.begin(), items.end()}, support, a, p});
        }
      },
      threads);

  std::sort(report.patterns.begin(), report.patterns.end(),
            [](const SignificantPattern& a, const SignificantPattern& b) {
              if (a.p_value.log() != b.p_value.log()) {
                return a.p_value.log() < b.p_value.log();
              }
              return a.items < b.items;
            });
  return report;
}

}  // namespace sigpat
