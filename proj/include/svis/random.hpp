#pragma once

#include <cstdint>

namespace svis {

// SplitMix64 finalizer, used to decorrelate raw seed material.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// PCG32 (XSH RR) with a stream selector. Each replication owns one stream;
// identical (seed, stream) pairs always reproduce the same sequence.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream)
      : state_(0), inc_((stream << 1u) | 1u) {
    next_u32();
    state_ += mix64(seed);
    next_u32();
  }

  std::uint32_t next_u32() {
    const std::uint64_t old = state_;
    state_ = old * 6364136223846793005ULL + inc_;
    const auto xorshifted =
        static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    const auto rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
  }

  std::uint64_t next_u64() {
    const std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return next_double() < p; }

  // Unbiased integer in [0, n) by rejection.
  std::uint32_t uniform_below(std::uint32_t n) {
    const std::uint32_t threshold = (0u - n) % n;
    for (;;) {
      const std::uint32_t r = next_u32();
      if (r >= threshold) return r % n;
    }
  }

 private:
  std::uint64_t state_;
  std::uint64_t inc_;
};

inline RandomStream derive_substream(std::uint64_t master_seed,
                                     std::uint64_t index) {
  return RandomStream(master_seed, index);
}

}  // namespace svis
