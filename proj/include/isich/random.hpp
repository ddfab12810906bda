#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace isich {

// Counter-based generator: every draw is a stateless mix of
// (seed, stream, counter), so independent streams for different neuron
// indices come from one master seed and replay bit-identically.
class CounterRng {
public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ull))) {}

  std::uint64_t next_u64() {
    return mix(key_ + (++counter_) * 0x9e3779b97f4a7c15ull);
  }

  // Uniform in (0, 1]; never returns 0 so log() is safe.
  double next_unit() {
    return (next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54;
  }

  // Exponential inter-arrival time with the given rate (1/unit-time).
  double exponential(double rate) {
    return -std::log(next_unit()) / rate;
  }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Multiply-shift; bias is < 2^-64 per draw, irrelevant at our n.
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Stable combiner for deriving per-cell seeds from a master seed.
inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  a ^= b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2);
  return a;
}

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b,
                                  std::uint64_t c) {
  return hash_combine(hash_combine(a, b), c);
}

}  // namespace isich
