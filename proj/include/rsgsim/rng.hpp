#pragma once
// Deterministic seeded random streams. A single master seed expands into
// independent streams keyed by (replication, purpose, link), so draws on
// one stream can never perturb another. Two runs sharing the master seed
// therefore see identical arrival and channel sample paths regardless of
// the policy under test (common random numbers).

#include <cstdint>
#include <random>

namespace rsgsim {

// SplitMix64 finalizer; bijective on 64-bit words.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Splitting rule, level 1: master seed -> per-replication seed.
inline std::uint64_t replication_seed(std::uint64_t master, std::uint32_t replication) {
  return splitmix64(splitmix64(master) + replication);
}

enum class StreamPurpose : std::uint64_t { Arrival = 1, Channel = 2, TieBreak = 3 };

// Splitting rule, level 2: replication seed -> per-(purpose, link) stream seed.
inline std::uint64_t stream_seed(std::uint64_t replication_seed, StreamPurpose purpose,
                                 std::uint64_t link) {
  return splitmix64(splitmix64(replication_seed + static_cast<std::uint64_t>(purpose)) + link);
}

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t bits() { return gen_(); }

  // Uniform double in [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n), unbiased via rejection.
  std::uint64_t uniform_int(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;  // multiple of n
    std::uint64_t v = gen_();
    while (v >= limit) v = gen_();
    return v % n;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace rsgsim
