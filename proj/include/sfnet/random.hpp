#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

namespace sfnet {

/// splitmix64 finalizer step; also the building block for seed derivation.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic pseudo-random stream: xoshiro256** seeded through splitmix64.
// Equal seeds yield identical draw sequences on every platform. Bounded,
// weighted, and shuffle draws are implemented here (not via std::*
// distributions, whose outputs differ between standard libraries).
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : seed_(seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = mix64(sm++);
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  /// Next raw 64-bit word of the stream.
  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Unbiased uniform draw from [0, bound); bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
    // Lemire multiply-shift with rejection of the biased low range.
    std::uint64_t x = next();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
      while (low < threshold) {
        x = next();
        m = static_cast<unsigned __int128>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Index draw proportional to non-negative weights; the total must be positive.
  std::size_t pick_weighted(std::span<const double> weights) {
    double total = 0.0;
    for (const double w : weights) {
      if (!(w >= 0.0)) throw std::invalid_argument("pick_weighted: negative weight");
      total += w;
    }
    if (!(total > 0.0)) throw std::invalid_argument("pick_weighted: total weight must be positive");
    const double target = uniform01() * total;
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] <= 0.0) continue;  // zero-weight entries are never selected
      acc += weights[i];
      last_positive = i;
      if (target < acc) return i;
    }
    return last_positive;  // rounding pushed target past the final prefix sum
  }

  /// In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

  std::uint64_t seed() const { return seed_; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t seed_;
  std::uint64_t state_[4];
};

/// Stable per-cell seed: mixes the master seed with an algorithm tag, m, and
/// the replicate index, so any cell can be replayed in isolation.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag, std::uint64_t m,
                                 std::uint64_t replicate) {
  std::uint64_t h = mix64(master);
  for (const char c : tag) h = mix64(h ^ static_cast<unsigned char>(c));
  h = mix64(h ^ m);
  h = mix64(h ^ replicate);
  return h;
}

/// Salted sub-stream seed (e.g. source-graph stream vs. generator stream).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
  return mix64(base ^ mix64(salt));
}

}  // namespace sfnet
