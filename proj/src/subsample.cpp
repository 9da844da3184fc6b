#include "sigpat/subsample.hpp"

#include <cmath>
#include <stdexcept>

#include "sigpat/miner.hpp"
#include "sigpat/rng.hpp"
#include "sigpat/stats.hpp"

namespace sigpat {

TransactionDatabase draw_subsample(const TransactionDatabase& db, Count K,
                                   std::uint64_t seed) {
  if (K < 1) throw std::domain_error("subsampling ratio K must be >= 1");
  const Count N = db.num_transactions();
  if (N < K) {
    throw std::domain_error("subsampling ratio K exceeds the transaction "
                            "count (N=" + std::to_string(N) +
                            ", K=" + std::to_string(K) + ")");
  }
  const Count drawn = N / K;
  SplitMix64 rng(seed);
  std::vector<std::vector<Count>> rows;
  rows.reserve(drawn);
  for (Count i = 0; i < drawn; ++i) {
    rows.push_back(db.rows()[rng.next_below(N)]);
  }
  return TransactionDatabase::from_rows_with_universe(
      std::move(rows), db.num_items(), db.external_ids());
}

SubsampleEstimate estimate_root(const TransactionDatabase& db_sub, Count K,
                                Count n, Count N, double alpha,
                                std::uint64_t seed, unsigned threads) {
  if (K < 1) throw std::domain_error("subsampling ratio K must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }
  if (n == 0 || n > N || n > N - n) {
    throw std::domain_error("n must be the original minority class size");
  }

  const LogFactorialTable lf(N);
  const double log_alpha = std::log(alpha);
  const auto cap_for = [&](Count scaled_sigma) -> PatternCount {
    return count_threshold_from_log(
        log_alpha - min_attainable_pvalue(lf, scaled_sigma, n, N).log());
  };

  SubsampleEstimate est;
  est.K = K;
  est.seed = seed;
  const Count sigma_stop = db_sub.num_transactions() + 2;
  for (Count sigma = 1;; ++sigma) {
    const MineResult mined = mine_count_capped(
        db_sub, sigma, MinerBudget::capped(cap_for(K * sigma)), threads);
    ++est.miner_invocations;
    if (!mined.stopped_early) {
      est.sigma_prime = sigma;
      est.estimated_testable = mined.count;
      break;
    }
    if (sigma > sigma_stop) {
      throw std::logic_error("estimate_root failed to terminate");
    }
  }
  est.sigma_hat = K * est.sigma_prime;
  est.degenerate = est.sigma_prime == 1 && est.estimated_testable == 0;
  return est;
}

}  // namespace sigpat
