#pragma once

#include <cstdint>

#include "sigpat/common.hpp"
#include "sigpat/transaction_db.hpp"

namespace sigpat {

/// Root-frequency estimate from a with-replacement subsample. Supports scale
/// by ~1/K, so the stopping rule evaluates psi at K-scaled supports against
/// the original marginals and sigma_hat = K * sigma_prime; the resolution of
/// the estimate is decimated by a factor of K. APPROXIMATE by construction:
/// estimates never feed the exact pipeline's corrected threshold.
struct SubsampleEstimate {
  Count K = 0;
  Count sigma_prime = 0;             // root frequency found on the subsample
  Count sigma_hat = 0;               // K * sigma_prime
  PatternCount estimated_testable = 0;  // subsample itemset count at sigma_prime
  std::uint64_t seed = 0;
  Count miner_invocations = 0;
  /// Set when the subsample supported no patterns at all (sigma_prime = 1
  /// with estimated_testable = 0, e.g. all drawn transactions empty).
  bool degenerate = false;
};

/// Draws floor(N/K) transactions i.i.d. uniformly with replacement, using a
/// seeded deterministic generator. The drawn database keeps the original
/// item universe and id map. K = 1 yields a bootstrap of the same size, not
/// the identity.
TransactionDatabase draw_subsample(const TransactionDatabase& db, Count K,
                                   std::uint64_t seed);

/// Incremental search with early stopping over the subsample, with the
/// stopping rule evaluated as count > alpha / psi(K * sigma, n, N) where n
/// and N are the ORIGINAL dataset's marginals.
SubsampleEstimate estimate_root(const TransactionDatabase& db_sub, Count K,
                                Count n, Count N, double alpha,
                                std::uint64_t seed = 0, unsigned threads = 1);

}  // namespace sigpat
