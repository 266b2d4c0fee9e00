#pragma once

#include <cstdint>
#include <random>

namespace chemlat {

// Seeded generator with platform-independent draws. std::mt19937_64 is
// specified bit-exactly; the standard distributions are not, so bounded
// integers and unit doubles are derived here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, n). n > 0.
  std::uint64_t below(std::uint64_t n) {
    // rejection on the top of the range keeps the draw unbiased
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  // Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

  bool operator==(const Rng&) const = default;

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer, used to derive independent sub-run seeds.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace chemlat
