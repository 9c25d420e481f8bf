#ifndef DCOS_INTERSECT_HPP
#define DCOS_INTERSECT_HPP

#include <vector>

#include "dcos/bigint.hpp"
#include "dcos/perm.hpp"
#include "dcos/rng.hpp"
#include "dcos/sylow.hpp"

namespace dcos {

// Stabilizer chain (base 1..n) of T = P ∩ P^x, found by a backtrack search
// that walks both groups through the aligned-block structure of P. Exact at
// any degree; no enumeration of P.
struct IntersectionChain {
  struct Level {
    int base = 0;
    std::vector<int> orbit;                // orbit[0] == base
    std::vector<Permutation> transversal;  // aligned with orbit
  };
  int n = 0;
  BigInt order = 1;
  std::vector<Level> levels;  // nontrivial levels, base ascending
};

IntersectionChain intersection_chain(const SylowStructure& S,
                                     const Permutation& x);

// |P ∩ P^x| via the chain; exact at any n
BigInt intersection_order_exact(const SylowStructure& S, const Permutation& x);

// uniform element of the intersection, via its chain
Permutation random_intersection_element(const IntersectionChain& chain,
                                        CounterRng& rng);

}  // namespace dcos

#endif
