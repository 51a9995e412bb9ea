#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace cevian {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/* Counter-based stream: output k of stream (seed, id) is a pure function of
   (seed, id, k), so any trial or restart can be replayed on its own and
   parallel runs draw exactly what a serial run draws.
 */
class CounterStream {
public:
  using result_type = std::uint64_t;

  CounterStream(std::uint64_t seed, std::uint64_t stream_id)
      : key_(mix64(seed + 0x9E3779B97F4A7C15ULL) ^ mix64(~stream_id * 0xD1B54A32D192ED03ULL)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    ++counter_;
    return mix64(key_ + counter_ * 0x9E3779B97F4A7C15ULL);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return double((*this)() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard exponential variate.
  double exponential() { return -std::log1p(-uniform()); }

  std::uint64_t counter() const { return counter_; }

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

} // namespace cevian
