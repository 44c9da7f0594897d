#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace cavitylab {

inline std::uint64_t splitmix64_next(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Counter-based splittable stream: the state is a hash of the key tuple, so a
// stream keyed by (seed, entity id, ...) is independent of evaluation order
// and safe to create concurrently. Good enough statistically for simulation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) { (void)splitmix64_next(state_); }

  Rng(std::initializer_list<std::uint64_t> keys) : state_(0x8000000080001000ull) {
    for (std::uint64_t k : keys) {
      state_ ^= k + 0x9E3779B97F4A7C15ull + (state_ << 6) + (state_ >> 2);
      (void)splitmix64_next(state_);
    }
  }

  std::uint64_t next() { return splitmix64_next(state_); }

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // Box-Muller; consumes two draws, returns one deviate.
  double normal(double mean = 0.0, double sd = 1.0) {
    double u1 = 1.0 - unit();  // (0, 1]
    double u2 = unit();
    double r = std::sqrt(-2.0 * std::log(u1));
    return mean + sd * r * std::cos(6.283185307179586476925286766559 * u2);
  }

  double exponential(double rate = 1.0) {
    return -std::log(1.0 - unit()) / rate;
  }

  // Uniform integer in [0, n) via multiply-shift.
  int below(int n) {
    return static_cast<int>((static_cast<unsigned __int128>(next()) *
                             static_cast<unsigned __int128>(n)) >> 64);
  }

  bool bernoulli(double p) { return unit() < p; }

 private:
  std::uint64_t state_;
};

}  // namespace cavitylab
