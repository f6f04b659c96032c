#pragma once

#include <cstdint>
#include <random>

namespace cellsw {

// splitmix64 step; used to expand one master seed into independent streams.
inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Derives an independent sub-seed from a master seed, a stream tag, and an
/// index (e.g. one stream per round). Pure function of its inputs.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t index) noexcept {
  std::uint64_t s = master;
  (void)splitmix64(s);
  s ^= 0x632be59bd9b4e019ull * (stream + 1);
  (void)splitmix64(s);
  s ^= 0x9e6c63d0a0f5a4b3ull * (index + 1);
  return splitmix64(s);
}

/// Deterministic random source. All draws go through explicit, portable
/// reductions (no std distributions, whose outputs are implementation
/// defined), so a given seed yields the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1), 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Unbiased uniform integer in [0, n). Rejection sampling.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~0ull - ~0ull % n;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cellsw
