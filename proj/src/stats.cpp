#include "sigpat/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sigpat {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

bool table_is_valid(const ContingencyTable& t) noexcept {
  if (t.x > t.N || t.n > t.N) return false;
  const Count a_max = std::min(t.x, t.n);
  const Count a_min = (t.x + t.n > t.N) ? t.x + t.n - t.N : 0;
  return t.a >= a_min && t.a <= a_max;
}

void ensure_valid(const ContingencyTable& t) {
  if (!table_is_valid(t)) {
    throw std::domain_error(
        "invalid contingency table: a=" + std::to_string(t.a) +
        " x=" + std::to_string(t.x) + " n=" + std::to_string(t.n) +
        " N=" + std::to_string(t.N));
  }
}

LogFactorialTable::LogFactorialTable(Count max_value) {
  table_.resize(static_cast<std::size_t>(max_value) + 1);
  for (std::size_t k = 0; k < table_.size(); ++k) {
    table_[k] = std::lgamma(static_cast<double>(k) + 1.0);
  }
}

double log_add_exp(double a, double b) noexcept {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

namespace {

// Grouped as lchoose(n,a) + lchoose(N-n,x-a) - lchoose(N,x) so that the
// single-term upper tail at a = x <= n is bit-identical to the closed form
// of the minimum attainable p-value (the middle term is exactly 0.0 there).
double log_pmf_terms(const LogFactorialTable& lf, Count a, Count x, Count n,
                     Count N) {
  return lf.log_binomial(n, a) + lf.log_binomial(N - n, x - a) -
         lf.log_binomial(N, x);
}

}  // namespace

LogProb hypergeom_pmf(const LogFactorialTable& lf, Count a, Count x, Count n,
                      Count N) {
  if (x > N || n > N) {
    throw std::domain_error("hypergeom_pmf: marginals exceed N (x=" +
                            std::to_string(x) + ", n=" + std::to_string(n) +
                            ", N=" + std::to_string(N) + ")");
  }
  const Count a_max = std::min(x, n);
  const Count a_min = (x + n > N) ? x + n - N : 0;
  if (a < a_min || a > a_max) return LogProb::zero();
  return LogProb::from_log(log_pmf_terms(lf, a, x, n, N));
}

namespace {

// Upper tail sum_{k=a}^{min(x,n)}; the full-support sum (a == a_min) is 1 by
// normalization and returned exactly.
double log_upper_tail(const LogFactorialTable& lf, const ContingencyTable& t) {
  const Count a_max = std::min(t.x, t.n);
  const Count a_min = (t.x + t.n > t.N) ? t.x + t.n - t.N : 0;
  if (t.a == a_min) return 0.0;
  double acc = kNegInf;
  for (Count k = t.a; k <= a_max; ++k) {
    acc = log_add_exp(acc, log_pmf_terms(lf, k, t.x, t.n, t.N));
  }
  return std::min(acc, 0.0);
}

double log_lower_tail(const LogFactorialTable& lf, const ContingencyTable& t) {
  const Count a_max = std::min(t.x, t.n);
  const Count a_min = (t.x + t.n > t.N) ? t.x + t.n - t.N : 0;
  if (t.a == a_max) return 0.0;
  double acc = kNegInf;
  for (Count k = a_min; k <= t.a; ++k) {
    acc = log_add_exp(acc, log_pmf_terms(lf, k, t.x, t.n, t.N));
  }
  return std::min(acc, 0.0);
}

}  // namespace

LogProb fisher_pvalue_one_tailed(const LogFactorialTable& lf,
                                 const ContingencyTable& t) {
  ensure_valid(t);
  return LogProb::from_log(log_upper_tail(lf, t));
}

LogProb fisher_pvalue_two_tailed(const LogFactorialTable& lf,
                                 const ContingencyTable& t) {
  ensure_valid(t);
  const double upper = log_upper_tail(lf, t);
  const double lower = log_lower_tail(lf, t);
  const double doubled = std::numbers::ln2_v<double> + std::min(upper, lower);
  return LogProb::from_log(std::min(doubled, 0.0));
}

LogProb min_attainable_pvalue(const LogFactorialTable& lf, Count x, Count n,
                              Count N) {
  if (n > N || n > N - n) {
    throw std::domain_error(
        "min_attainable_pvalue requires n <= N - n (n=" + std::to_string(n) +
        ", N=" + std::to_string(N) + "); swap the labels so the positive "
        "class is the minority");
  }
  if (x == 0) return LogProb::one();
  if (x <= n) {
    return LogProb::from_log(lf.log_binomial(n, x) - lf.log_binomial(N, x));
  }
  // Beyond x = n the closed form is no longer non-increasing; the constant
  // 1/C(N,n) is a lower bound on the true minimum and keeps monotonicity.
  return LogProb::from_log(-lf.log_binomial(N, n));
}

LogProb approx_min_pvalue(Count sigma, Count n, Count N) {
  if (sigma == 0) return LogProb::one();
  if (n == 0 || N == 0 || n > N) {
    throw std::domain_error("approx_min_pvalue: need 0 < n <= N");
  }
  const double log_ratio = std::log(static_cast<double>(n)) -
                           std::log(static_cast<double>(N));
  return LogProb::from_log(static_cast<double>(sigma) * log_ratio);
}

PatternCount count_threshold_from_log(double log_bound) noexcept {
  constexpr PatternCount kHuge = PatternCount{1} << 62;
  static const double kLogHuge = 62.0 * std::numbers::ln2_v<double>;
  if (log_bound < 0.0) return 0;
  if (log_bound >= kLogHuge) return kHuge;
  PatternCount m = static_cast<PatternCount>(std::floor(std::exp(log_bound)));
  if (m < 1) m = 1;
  while (std::log(static_cast<double>(m + 1)) <= log_bound) ++m;
  while (m > 1 && std::log(static_cast<double>(m)) > log_bound) --m;
  return m;
}

}  // namespace sigpat
