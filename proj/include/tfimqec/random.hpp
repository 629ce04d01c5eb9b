#pragma once

#include <cstdint>
#include <random>

namespace tfimqec {

/// SplitMix64 finalizer. Used to decorrelate seeds before they reach the engine.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seeded random source passed explicitly to every stochastic routine.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Derived quantities (uniform doubles, bounded integers) are
/// computed here rather than through std distributions so that results are
/// bit-identical across standard library implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

  /// Independent stream for trial `index` of a run seeded with `master`.
  /// Depends only on (master, index), never on execution order.
  static RandomStream substream(std::uint64_t master, std::uint64_t index) {
    return RandomStream(mix64(master ^ mix64(index + 0x632be59bd9b4e019ULL)));
  }

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform integer in [0, bound). Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) {
      return 0;
    }
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t r = next_u64();
    while (r >= limit) {
      r = next_u64();
    }
    return r % bound;
  }

  /// Fair ±1 coin.
  int coin() { return (next_u64() >> 63) ? -1 : +1; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace tfimqec
