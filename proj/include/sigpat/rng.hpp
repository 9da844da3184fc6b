#pragma once

#include <cstdint>

namespace sigpat {

// splitmix64: seedable, splittable, and bit-identical across platforms
// (unlike std::uniform_int_distribution, whose output is
// implementation-defined). Reproducible subsampling depends on it.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound) via Lemire's multiply-shift with rejection.
  std::uint64_t next_below(std::uint64_t bound) noexcept {
    while (true) {
      const std::uint64_t x = next();
      const unsigned __int128 m =
          static_cast<unsigned __int128>(x) * bound;
      const std::uint64_t low = static_cast<std::uint64_t>(m);
      if (low >= bound || low >= (0 - bound) % bound) {
        return static_cast<std::uint64_t>(m >> 64);
      }
    }
  }

  double next_unit() noexcept {  // [0, 1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Derives an independent stream (e.g. one per repetition).
  SplitMix64 split() noexcept { return SplitMix64(next()); }

 private:
  std::uint64_t state_;
};

inline constexpr const char* kRngIdentity = "splitmix64+lemire-bounded";

}  // namespace sigpat
