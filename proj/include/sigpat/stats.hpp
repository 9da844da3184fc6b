#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <numbers>
#include <vector>

#include "sigpat/common.hpp"

namespace sigpat {

/// A probability stored as its natural logarithm. -inf encodes probability
/// zero. Minimum attainable p-values decay super-exponentially with the
/// support, underflowing a double around sigma ~ 350 for n/N = 0.1, so every
/// probability in this library lives in log space and comparisons against
/// thresholds are done on the logs directly.
class LogProb {
 public:
  constexpr LogProb() = default;

  /// Wraps a log-probability. Values that are a rounding hair above 0 are
  /// clamped to 0 (probability 1); genuinely positive logs are a logic error.
  static LogProb from_log(double log_value) {
    if (log_value > 0.0) {
      if (log_value > 1e-6) {
        throw std::domain_error("LogProb: log value " +
                                std::to_string(log_value) + " is positive");
      }
      log_value = 0.0;
    }
    LogProb p;
    p.log_ = log_value;
    return p;
  }

  static constexpr LogProb one() {
    LogProb p;
    p.log_ = 0.0;
    return p;
  }

  static constexpr LogProb zero() { return LogProb(); }

  constexpr double log() const noexcept { return log_; }
  double log10() const noexcept { return log_ / std::numbers::ln10_v<double>; }
  double linear() const noexcept { return std::exp(log_); }
  constexpr bool is_zero() const noexcept {
    return log_ == -std::numeric_limits<double>::infinity();
  }

  friend constexpr auto operator<=>(const LogProb&, const LogProb&) = default;

 private:
  double log_ = -std::numeric_limits<double>::infinity();
};

/// 2x2 contingency table for testing the association of a pattern with a
/// binary label: a = pattern occurrences in the positive class, x = pattern
/// support, n = positive class size, N = total observations.
struct ContingencyTable {
  Count a = 0;
  Count x = 0;
  Count n = 0;
  Count N = 0;
};

/// True iff the marginals are consistent and a lies in the admissible cell
/// range [max(0, x + n - N), min(x, n)].
bool table_is_valid(const ContingencyTable& t) noexcept;

/// Throws std::domain_error when the table is invalid.
void ensure_valid(const ContingencyTable& t);

/// Cached values of ln(k!) for k in [0, size]. Lookups beyond the cache fall
/// back to lgamma. The table is immutable after construction and safe for
/// concurrent reads; every log-probability in one run should come from the
/// same table so that threshold ties are bit-reproducible.
class LogFactorialTable {
 public:
  explicit LogFactorialTable(Count max_value);

  double log_factorial(std::uint64_t k) const {
    if (k < table_.size()) return table_[k];
    return std::lgamma(static_cast<double>(k) + 1.0);
  }

  /// ln C(n, k); -inf when k > n. k is canonicalized to min(k, n-k) so the
  /// symmetric pair evaluates bit-identically.
  double log_binomial(std::uint64_t n, std::uint64_t k) const {
    if (k > n) return -std::numeric_limits<double>::infinity();
    if (k > n - k) k = n - k;
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
  }

  Count cached_max() const noexcept {
    return static_cast<Count>(table_.size() - 1);
  }

 private:
  std::vector<double> table_;
};

/// ln(exp(a) + exp(b)) without overflow; -inf absorbs.
double log_add_exp(double a, double b) noexcept;

/// Log of the hypergeometric pmf p(a | x, n, N) = C(n,a) C(N-n,x-a) / C(N,x).
/// Returns zero() for a outside the admissible range. Throws on inconsistent
/// marginals (x > N or n > N).
LogProb hypergeom_pmf(const LogFactorialTable& lf, Count a, Count x, Count n,
                      Count N);

/// One-tailed Fisher exact test: upper tail sum_{k=a}^{min(x,n)} p(k|x,n,N),
/// accumulated in log space.
LogProb fisher_pvalue_one_tailed(const LogFactorialTable& lf,
                                 const ContingencyTable& t);

/// Two-tailed Fisher exact test via tail doubling: min(1, 2 min(upper, lower)).
LogProb fisher_pvalue_two_tailed(const LogFactorialTable& lf,
                                 const ContingencyTable& t);

/// Minimum p-value attainable by the one-tailed Fisher test given marginals:
/// C(n,x)/C(N,x) for x <= n, and the constant 1/C(N,n) for x > n (where the
/// closed form stops being non-increasing). Requires n <= N - n; callers must
/// canonicalize labels so n is the minority class.
LogProb min_attainable_pvalue(const LogFactorialTable& lf, Count x, Count n,
                              Count N);

/// Closed-form approximation (n/N)^sigma of the minimum attainable p-value,
/// valid for sigma << n. Diagnostics only; never used in correctness-critical
/// comparisons.
LogProb approx_min_pvalue(Count sigma, Count n, Count N);

/// Largest integer m with ln m <= log_bound, clamped to 2^62; 0 for negative
/// bounds. Turns "m > alpha / psi(sigma)" (evaluated as ln m > ln alpha -
/// ln psi) into an integer cap the miner can check exactly, so searches and
/// the subsampling estimator share one bit-reproducible comparator.
PatternCount count_threshold_from_log(double log_bound) noexcept;

}  // namespace sigpat
