#pragma once

#include <cstdint>

namespace arealstat {

// xoshiro256++ generator seeded through splitmix64.
//
// All simulation randomness flows through this type so that results are
// bit-identical across platforms, compilers and worker-thread counts.
// Independent substreams are obtained with derive_seed(base, tag, index):
// distinct (base, tag, index) triples give streams with no practical
// correlation, which is how the harness hands each replicate and each
// envelope simulation its own generator.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) word = splitmix64(x);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on [0, bound), unbiased via rejection. bound must be > 0.
  std::uint64_t uniform_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  static std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag,
                                   std::uint64_t index) {
    std::uint64_t x = base;
    std::uint64_t h = splitmix64(x);
    x = h ^ tag;
    h = splitmix64(x);
    x = h ^ index;
    return splitmix64(x);
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }

  std::uint64_t state_[4];
};

// Stream tags. Any distinct constants work; these spell out their role.
inline constexpr std::uint64_t kStreamReplicate = 0x7265706c69636174ULL;  // "replicat"
inline constexpr std::uint64_t kStreamEnvelope = 0x656e76656c6f7065ULL;   // "envelope"
inline constexpr std::uint64_t kStreamSim = 0x6373722d73696d73ULL;        // "csr-sims"

}  // namespace arealstat
