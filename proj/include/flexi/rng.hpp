#pragma once

#include <cstdint>

namespace flexi {

// SplitMix64 (Steele, Lea, Vigna). One 64-bit state word, additive constant
// 0x9E3779B97F4A7C15, two xor-shift-multiply mixing rounds. Chosen because the
// algorithm is short enough to re-implement bit-exactly anywhere, which keeps
// every seeded run reproducible across platforms and languages.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform value in [0, n). Rejection sampling on the top range keeps the
  // distribution exactly uniform and the draw sequence platform-independent.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }

  // Real in [0,1) from the top 53 bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
  std::uint64_t state_;
};

// Stable child-seed derivation: derive_seed(s, i) is the (i+1)-th output of
// SplitMix64 seeded at s, computed directly from the jumped state.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

} // namespace flexi
