#ifndef PROBEMAX_RANDOM_HPP
#define PROBEMAX_RANDOM_HPP

#include <cstdint>
#include <limits>
#include <random>

namespace probemax {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based random stream. The i-th output is a pure function of
/// (seed, stream, i), so trial ranges can be handed to different threads
/// without changing any draw.
class CounterStream {
 public:
  using result_type = std::uint64_t;

  CounterStream(std::uint64_t seed, std::uint64_t stream)
      : key_(splitmix64(splitmix64(seed) ^ (stream * 0xd1342543de82ef95ULL))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() { return splitmix64(key_ ^ splitmix64(counter_++)); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
template <class Rng>
  requires std::uniform_random_bit_generator<Rng>
double uniform01(Rng& rng) {
  static_assert(Rng::max() - Rng::min() == std::numeric_limits<std::uint64_t>::max(),
                "uniform01 expects a full 64-bit generator");
  return static_cast<double>((rng() - Rng::min()) >> 11) * 0x1.0p-53;
}

/// Uniform integer in [lo, hi].
template <class Rng>
  requires std::uniform_random_bit_generator<Rng>
std::uint64_t uniform_int(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo + 1;
  if (span == 0) return rng();
  // Rejection keeps the draw exactly uniform.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return lo + x % span;
}

}  // namespace probemax

#endif  // PROBEMAX_RANDOM_HPP
