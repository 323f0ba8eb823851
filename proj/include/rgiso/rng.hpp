#pragma once

#include <cstdint>

namespace rgiso {

/// 64-bit finalizer from SplitMix64 (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Identifies one independent random stream: a master seed plus a substream index.
struct Seed {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;

  friend bool operator==(const Seed&, const Seed&) = default;
};

/// Counter-based generator. The i-th output of stream (master, stream) is
/// mix64(key + i * golden) where key = mix64(mix64(master) ^ (stream * golden)),
/// so outputs are a pure function of (master, stream, i) and streams never
/// share state.
class CounterRng {
 public:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  explicit CounterRng(Seed seed) noexcept
      : key_(mix64(mix64(seed.master) ^ (seed.stream * kGolden + 0x6a09e667f3bcc909ULL))) {}

  std::uint64_t next() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * kGolden);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Unbiased integer in [0, bound) by rejection; bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t x = next();
      const unsigned __int128 product = static_cast<unsigned __int128>(x) * bound;
      if (static_cast<std::uint64_t>(product) >= limit) {
        return static_cast<std::uint64_t>(product >> 64);
      }
    }
  }

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace rgiso
