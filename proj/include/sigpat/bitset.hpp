#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "sigpat/common.hpp"

namespace sigpat {

// Fixed-width transaction-id set backed by 64-bit words. Support counting is
// the hot loop of the miner; everything here boils down to AND + popcount.
class TidBitset {
 public:
  TidBitset() = default;
  explicit TidBitset(Count bits)
      : words_((bits + 63) / 64, 0), bits_(bits) {}

  Count size_bits() const noexcept { return bits_; }

  void set(Count i) noexcept { words_[i >> 6] |= 1ull << (i & 63); }

  bool test(Count i) const noexcept {
    return (words_[i >> 6] >> (i & 63)) & 1ull;
  }

  void set_first(Count n) noexcept {
    Count full = n >> 6;
    for (Count w = 0; w < full; ++w) words_[w] = ~0ull;
    if (n & 63) words_[full] = (1ull << (n & 63)) - 1;
  }

  Count count() const noexcept {
    Count c = 0;
    for (std::uint64_t w : words_) c += static_cast<Count>(std::popcount(w));
    return c;
  }

  static Count and_count(const TidBitset& a, const TidBitset& b) noexcept {
    Count c = 0;
    const std::size_t nw = a.words_.size();
    const std::uint64_t* wa = a.words_.data();
    const std::uint64_t* wb = b.words_.data();
    for (std::size_t i = 0; i < nw; ++i) {
      c += static_cast<Count>(std::popcount(wa[i] & wb[i]));
    }
    return c;
  }

  void assign_and(const TidBitset& a, const TidBitset& b) {
    words_.resize(a.words_.size());
    bits_ = a.bits_;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      words_[i] = a.words_[i] & b.words_[i];
    }
  }

  template <typename Fn>
  void for_each_set(Fn&& fn) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w != 0) {
        const int bit = std::countr_zero(w);
        fn(static_cast<Count>(wi * 64 + static_cast<std::size_t>(bit)));
        w &= w - 1;
      }
    }
  }

  std::span<const std::uint64_t> words() const noexcept { return words_; }

 private:
  std::vector<std::uint64_t> words_;
  Count bits_ = 0;
};

}  // namespace sigpat
