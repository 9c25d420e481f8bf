#ifndef DCOS_RNG_HPP
#define DCOS_RNG_HPP

#include <cstdint>

#include "dcos/perm.hpp"

namespace dcos {

// Counter-based generator: output i of stream s under seed k is
//   mix(base(k, s) + i * GAMMA)
// where mix is the SplitMix64 finalizer and base decorrelates streams.
// Any (seed, stream, counter) triple determines the output, so parallel
// workers draw from disjoint streams reproducibly and merge order does
// not matter.
class CounterRng {
 public:
  explicit CounterRng(uint64_t seed, uint64_t stream = 0)
      : base_(stream_base(seed, stream)), counter_(0) {}

  uint64_t next_u64() { return mix(base_ + (counter_++) * GAMMA); }

  // uniform in [0, bound) by rejection; exact, no modulo bias
  uint64_t next_below(uint64_t bound);

  // uniform double in [0,1)
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  static uint64_t mix(uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  static uint64_t stream_base(uint64_t seed, uint64_t stream) {
    return mix(seed + GAMMA) ^ mix(stream * GAMMA + 0x1F0A2BE71D67629Bull);
  }

  static constexpr uint64_t GAMMA = 0x9E3779B97F4A7C15ull;

 private:
  uint64_t base_;
  uint64_t counter_;
};

// Fisher-Yates: each of the n! outcomes equally likely; deterministic
// given the generator state.
Permutation random_uniform(int n, CounterRng& rng);

}  // namespace dcos

#endif
