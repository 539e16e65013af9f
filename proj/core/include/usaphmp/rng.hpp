#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>

namespace usaphmp {

/// Purpose of a derived random stream. Part of the stream key, so values
/// must never be renumbered.
enum class StreamRole : std::uint8_t {
  kPerturbation = 1,  ///< spawning island populations from the ancestor
  kVariation = 2,     ///< crossover cut points and mutation swaps
  kInstance = 3,      ///< instance generation
};

/// Deterministic pseudo-random stream.
///
/// Backed by std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Bounded integers and unit reals are derived here rather than
/// through <random> distributions, whose algorithms are implementation
/// defined, so a seed reproduces the same draws on every platform.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::size_t uniform_index(std::size_t bound) {
    const std::uint64_t b = bound;
    const std::uint64_t threshold = (0 - b) % b;  // 2^64 mod b
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return static_cast<std::size_t>(r % b);
    }
  }

  /// Uniform real in [0, 1) with 53 random bits.
  double uniform_unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Key of the stream owned by (`seed`, `island`, `role`):
/// splitmix64(seed ^ splitmix64(role << 56 | island)).
/// Injective in `seed` for fixed (island, role). island must be < 2^56.
constexpr std::uint64_t stream_key(std::uint64_t seed, std::size_t island,
                                   StreamRole role) noexcept {
  const std::uint64_t tag =
      (static_cast<std::uint64_t>(role) << 56) | static_cast<std::uint64_t>(island);
  return splitmix64(seed ^ splitmix64(tag));
}

inline RngStream resolve_rng(std::uint64_t seed, std::size_t island,
                             StreamRole role) {
  return RngStream(stream_key(seed, island, role));
}

}  // namespace usaphmp
