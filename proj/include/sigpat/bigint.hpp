#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "sigpat/common.hpp"

namespace sigpat {

// Arbitrary-precision unsigned integer, little-endian 32-bit limbs. Sized for
// naive Bonferroni correction factors: the unrestricted factor is 2^P - 1,
// which has ~13400 decimal digits for P = 44504.
class BigUint {
 public:
  BigUint() = default;
  explicit BigUint(std::uint64_t value);

  static BigUint power_of_two(std::uint32_t exponent);
  /// Exact C(n, k) via the multiply/divide cascade.
  static BigUint binomial(Count n, Count k);

  BigUint& operator+=(const BigUint& rhs);
  BigUint& operator-=(const BigUint& rhs);  // requires *this >= rhs
  BigUint& mul_small(std::uint32_t factor);
  /// Divides in place, returns the remainder.
  std::uint32_t divmod_small(std::uint32_t divisor);

  BigUint operator*(const BigUint& rhs) const;
  BigUint operator+(const BigUint& rhs) const;

  std::strong_ordering operator<=>(const BigUint& rhs) const;
  bool operator==(const BigUint& rhs) const = default;

  bool is_zero() const noexcept { return limbs_.empty(); }
  std::size_t bit_length() const noexcept;
  bool fits_uint64() const noexcept { return limbs_.size() <= 2; }
  std::uint64_t to_uint64() const;  // throws std::overflow_error if too big

  /// Natural log; -inf for zero. Accurate to ~1e-19 relative, enough to act
  /// as an exact-rational reference for log-space p-value comparisons.
  double log() const noexcept;

  std::string to_decimal() const;
  /// "2.52e+08"-style rendering with `significant` digits of mantissa.
  std::string to_scientific(int significant = 3) const;

 private:
  void trim();
  std::vector<std::uint32_t> limbs_;
};

/// Bonferroni correction factor for testing all interactions of order <= d
/// among p features: sum_{i=1}^{d} C(p, i). d == p yields 2^p - 1 (every
/// non-empty subset). Throws std::domain_error unless 1 <= d <= p.
BigUint naive_bonferroni_factor(Count p, Count d);

}  // namespace sigpat
