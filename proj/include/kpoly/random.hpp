#pragma once

// Counter-based random stream: the value at (seed, stream, i) depends on
// nothing else, so parallel consumers keyed by stream id reproduce a serial
// run exactly.

#include <cstdint>

namespace kpoly {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

class CounterRng {
 public:
  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(splitmix64(seed ^ splitmix64(stream + 0x632BE59BD9B4E019ULL))) {}

  constexpr std::uint64_t next() { return splitmix64(key_ + counter_++); }
  // Uniform in [0, 1) with 53 random bits.
  constexpr double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [0, n); n > 0. The modulo bias is below 2^-32 for
  // the sizes used here.
  constexpr std::uint64_t below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace kpoly
