#include "sigpat/bigint.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace sigpat {

namespace {
constexpr std::uint64_t kBase = 1ull << 32;
}

BigUint::BigUint(std::uint64_t value) {
  while (value != 0) {
    limbs_.push_back(static_cast<std::uint32_t>(value & 0xffffffffu));
    value >>= 32;
  }
}

void BigUint::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigUint BigUint::power_of_two(std::uint32_t exponent) {
  BigUint r;
  r.limbs_.assign(exponent / 32 + 1, 0);
  r.limbs_.back() = 1u << (exponent % 32);
  return r;
}

BigUint& BigUint::operator+=(const BigUint& rhs) {
  if (rhs.limbs_.size() > limbs_.size()) limbs_.resize(rhs.limbs_.size(), 0);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::uint64_t sum = carry + limbs_[i];
    if (i < rhs.limbs_.size()) sum += rhs.limbs_[i];
    limbs_[i] = static_cast<std::uint32_t>(sum & 0xffffffffu);
    carry = sum >> 32;
  }
  if (carry != 0) limbs_.push_back(static_cast<std::uint32_t>(carry));
  return *this;
}

BigUint& BigUint::operator-=(const BigUint& rhs) {
  if (*this < rhs) throw std::underflow_error("BigUint subtraction underflow");
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::int64_t diff = static_cast<std::int64_t>(limbs_[i]) - borrow;
    if (i < rhs.limbs_.size()) diff -= rhs.limbs_[i];
    if (diff < 0) {
      diff += static_cast<std::int64_t>(kBase);
      borrow = 1;
    } else {
      borrow = 0;
    }
    limbs_[i] = static_cast<std::uint32_t>(diff);
  }
  trim();
  return *this;
}

BigUint& BigUint::mul_small(std::uint32_t factor) {
  if (factor == 0) {
    limbs_.clear();
    return *this;
  }
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::uint64_t prod = static_cast<std::uint64_t>(limbs_[i]) * factor + carry;
    limbs_[i] = static_cast<std::uint32_t>(prod & 0xffffffffu);
    carry = prod >> 32;
  }
  if (carry != 0) limbs_.push_back(static_cast<std::uint32_t>(carry));
  return *this;
}

std::uint32_t BigUint::divmod_small(std::uint32_t divisor) {
  if (divisor == 0) throw std::domain_error("BigUint division by zero");
  std::uint64_t rem = 0;
  for (std::size_t i = limbs_.size(); i-- > 0;) {
    std::uint64_t cur = (rem << 32) | limbs_[i];
    limbs_[i] = static_cast<std::uint32_t>(cur / divisor);
    rem = cur % divisor;
  }
  trim();
  return static_cast<std::uint32_t>(rem);
}

BigUint BigUint::operator*(const BigUint& rhs) const {
  BigUint r;
  if (is_zero() || rhs.is_zero()) return r;
  r.limbs_.assign(limbs_.size() + rhs.limbs_.size(), 0);
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < rhs.limbs_.size(); ++j) {
      std::uint64_t cur = r.limbs_[i + j] +
                          static_cast<std::uint64_t>(limbs_[i]) * rhs.limbs_[j] +
                          carry;
      r.limbs_[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
    }
    std::size_t k = i + rhs.limbs_.size();
    while (carry != 0) {
      std::uint64_t cur = r.limbs_[k] + carry;
      r.limbs_[k] = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
      ++k;
    }
  }
  r.trim();
  return r;
}

BigUint BigUint::operator+(const BigUint& rhs) const {
  BigUint r = *this;
  r += rhs;
  return r;
}

std::strong_ordering BigUint::operator<=>(const BigUint& rhs) const {
  if (limbs_.size() != rhs.limbs_.size()) {
    return limbs_.size() <=> rhs.limbs_.size();
  }
  for (std::size_t i = limbs_.size(); i-- > 0;) {
    if (limbs_[i] != rhs.limbs_[i]) return limbs_[i] <=> rhs.limbs_[i];
  }
  return std::strong_ordering::equal;
}

std::size_t BigUint::bit_length() const noexcept {
  if (limbs_.empty()) return 0;
  std::size_t bits = (limbs_.size() - 1) * 32;
  std::uint32_t top = limbs_.back();
  while (top != 0) {
    ++bits;
    top >>= 1;
  }
  return bits;
}

std::uint64_t BigUint::to_uint64() const {
  if (!fits_uint64()) throw std::overflow_error("BigUint exceeds uint64");
  std::uint64_t v = 0;
  for (std::size_t i = limbs_.size(); i-- > 0;) v = (v << 32) | limbs_[i];
  return v;
}

double BigUint::log() const noexcept {
  if (limbs_.empty()) return -std::numeric_limits<double>::infinity();
  const std::size_t bits = bit_length();
  if (bits <= 63) {
    std::uint64_t v = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) v = (v << 32) | limbs_[i];
    return std::log(static_cast<double>(v));
  }
  // log(top 64 bits) + shift * log 2; truncation error < 2^-63.
  std::uint64_t top = 0;
  for (std::size_t take = 0; take < 64; ++take) {
    const std::size_t bit = bits - 1 - take;
    const bool set = (limbs_[bit / 32] >> (bit % 32)) & 1u;
    top = (top << 1) | (set ? 1u : 0u);
  }
  return std::log(static_cast<double>(top)) +
         static_cast<double>(bits - 64) * std::numbers::ln2_v<double>;
}

std::string BigUint::to_decimal() const {
  if (limbs_.empty()) return "0";
  BigUint tmp = *this;
  std::string out;
  while (!tmp.is_zero()) {
    std::uint32_t chunk = tmp.divmod_small(1000000000u);
    std::string part = std::to_string(chunk);
    if (!tmp.is_zero()) part.insert(0, 9 - part.size(), '0');
    out.insert(0, part);
  }
  return out;
}

std::string BigUint::to_scientific(int significant) const {
  if (significant < 1) significant = 1;
  if (limbs_.empty()) return "0e+00";
  // Round-trips through printf for values a double represents exactly, so
  // small factors render with the usual half-even tie behavior.
  if (bit_length() <= 53) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*e", significant - 1,
                  static_cast<double>(to_uint64()));
    return buf;
  }
  std::string digits = to_decimal();
  const int exponent = static_cast<int>(digits.size()) - 1;
  std::string mant = digits.substr(
      0, static_cast<std::size_t>(significant) + 1);
  while (static_cast<int>(mant.size()) < significant + 1) mant.push_back('0');
  // Half-up rounding on the digit after the mantissa.
  bool round_up = mant.back() >= '5';
  mant.pop_back();
  int exp_adjust = 0;
  if (round_up) {
    int i = static_cast<int>(mant.size()) - 1;
    while (i >= 0) {
      if (mant[i] != '9') {
        ++mant[i];
        break;
      }
      mant[i] = '0';
      --i;
    }
    if (i < 0) {
      mant.insert(mant.begin(), '1');
      mant.pop_back();
      exp_adjust = 1;
    }
  }
  std::string out;
  out += mant[0];
  if (significant > 1) {
    out += '.';
    out += mant.substr(1);
  }
  char expbuf[16];
  std::snprintf(expbuf, sizeof(expbuf), "e+%02d", exponent + exp_adjust);
  out += expbuf;
  return out;
}

BigUint BigUint::binomial(Count n, Count k) {
  if (k > n) return BigUint();
  if (k > n - k) k = n - k;
  BigUint r(1);
  for (Count i = 1; i <= k; ++i) {
    r.mul_small(n - i + 1);
    r.divmod_small(i);
  }
  return r;
}

BigUint naive_bonferroni_factor(Count p, Count d) {
  if (d < 1 || d > p) {
    throw std::domain_error("naive_bonferroni_factor requires 1 <= d <= p");
  }
  if (d == p) {
    BigUint r = BigUint::power_of_two(p);
    r -= BigUint(1);
    return r;
  }
  BigUint sum;
  BigUint term(1);
  for (Count i = 1; i <= d; ++i) {
    term.mul_small(p - i + 1);
    term.divmod_small(i);
    sum += term;
  }
  return sum;
}

}  // namespace sigpat
