#pragma once

#include <cstdint>

namespace icc {

// Splittable pseudo-random generator. A stream is fully determined by
// (seed, stream): the initial state is a hash of the pair and every draw
// advances the state by a fixed odd increment before finalizing. Distinct
// (seed, stream) pairs give statistically independent sequences, which is
// what lets every Monte Carlo trial own stream id = trial index and makes
// results independent of scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(derive(seed, stream)) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return finalize(state_);
  }

  // Uniform on [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on [0, bound), unbiased. bound must be >= 1.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  static std::uint64_t finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t h = finalize(seed + 0x9E3779B97F4A7C15ULL);
    h = finalize(h ^ (stream * 0xD1342543DE82EF95ULL + 0x2545F4914F6CDD1DULL));
    return h;
  }

  std::uint64_t state_;
};

}  // namespace icc
