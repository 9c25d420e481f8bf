#include "dcos/rng.hpp"

#include <stdexcept>

namespace dcos {

uint64_t CounterRng::next_below(uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("next_below: bound 0");
  if ((bound & (bound - 1)) == 0) return next_u64() & (bound - 1);
  // rejection over the largest multiple of bound
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    uint64_t x = next_u64();
    if (x < limit) return x % bound;
  }
}

Permutation random_uniform(int n, CounterRng& rng) {
  if (n < 1) throw std::invalid_argument("random_uniform: n >= 1 required");
  Permutation g = Permutation::identity(n);
  for (int i = n - 1; i > 0; --i) {
    uint64_t j = rng.next_below(static_cast<uint64_t>(i) + 1);
    std::swap(g.img[i], g.img[j]);
  }
  return g;
}

}  // namespace dcos
