#pragma once

#include <cmath>
#include <cstdint>

namespace wiretap::rng {

// Counter-based randomness: every draw is a pure function of
// (seed, stream, index). Simulations assign one stream per logical task
// (e.g. one per trial) and consume indexed draws inside it, so results are
// identical no matter how trials are scheduled across workers.

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

class Counter {
 public:
  Counter(std::uint64_t seed, std::uint64_t stream)
      : base_(mix64(mix64(seed) ^ 0xb5297a4d3f84d5b3ull ^ stream)) {}

  std::uint64_t u64(std::uint64_t index) const { return mix64(base_ ^ (index * 0x9e3779b97f4a7c15ull)); }

  // Uniform double in [0, 1), 53 mantissa bits.
  double uniform(std::uint64_t index) const {
    return static_cast<double>(u64(index) >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p, std::uint64_t index) const { return uniform(index) < p; }

 private:
  std::uint64_t base_;
};

// Stateful cursor over a Counter for call sites that want sequential draws.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t stream) : ctr_(seed, stream) {}
  explicit Stream(Counter c) : ctr_(c) {}

  std::uint64_t u64() { return ctr_.u64(cursor_++); }
  double uniform() { return ctr_.uniform(cursor_++); }
  bool bernoulli(double p) { return uniform() < p; }

  // Box-Muller from two consecutive uniforms; no state beyond the cursor.
  double normal() {
    double u1 = uniform(), u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    return r * std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  Counter ctr_;
  std::uint64_t cursor_ = 0;
};

}  // namespace wiretap::rng
