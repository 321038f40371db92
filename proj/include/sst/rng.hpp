#pragma once

#include <cstdint>

namespace sst {

// Splittable counter-based pseudo-random generator.
//
// Every draw is a pure function of (seed, stream, counter), so substreams can
// be carved out without coupling: changing how many values one stream
// consumes never shifts another stream. Stream layout used by the library:
//   generators: stream = kStreamGenerator
//   pair presence (partial sampling): kStreamPresence, counter = i*n + j
//   pair outcomes: kStreamOutcome, counter = i*n + j
// Mixing is the splitmix64 finalizer applied twice; adequate for Monte Carlo
// work at this scale, not for cryptography.

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed_stream(std::uint64_t seed, std::uint64_t stream) {
  return mix64(mix64(seed) ^ (0xD1B54A32D192ED03ull * (stream + 1)));
}

constexpr std::uint64_t kStreamGenerator = 1;
constexpr std::uint64_t kStreamPermutation = 2;
constexpr std::uint64_t kStreamPresence = 3;
constexpr std::uint64_t kStreamOutcome = 4;
constexpr std::uint64_t kStreamDiagonal = 5;
constexpr std::uint64_t kStreamRestarts = 6;

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix_seed_stream(seed, stream)), ctr_(0) {}

  // Stateless draws addressed by counter.
  std::uint64_t u64_at(std::uint64_t ctr) const { return mix64(key_ ^ mix64(ctr)); }
  double uniform_at(std::uint64_t ctr) const {
    return static_cast<double>(u64_at(ctr) >> 11) * 0x1.0p-53;
  }
  bool bernoulli_at(std::uint64_t ctr, double p) const { return uniform_at(ctr) < p; }

  // Sequential interface on top of the counter.
  std::uint64_t next_u64() { return u64_at(ctr_++); }
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * next_double(); }
  // Unbiased integer in [0, bound) by rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % bound;
  }

 private:
  std::uint64_t key_;
  std::uint64_t ctr_;
};

}  // namespace sst
