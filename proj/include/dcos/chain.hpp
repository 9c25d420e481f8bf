#ifndef DCOS_CHAIN_HPP
#define DCOS_CHAIN_HPP

#include <vector>

#include "dcos/bigint.hpp"
#include "dcos/perm.hpp"
#include "dcos/sylow.hpp"

namespace dcos {

// Point stabilizer chain with the fixed base 1,...,n in natural order.
// Level i describes the orbit of point i under the subgroup fixing
// 1,...,i-1 pointwise, with transversal witnesses u (u(i) = point).
struct ChainLevel {
  int base = 0;                          // 0-based point
  std::vector<int> orbit;                // orbit[0] == base
  std::vector<int> orbit_pos;            // point -> index+1, 0 if absent
  std::vector<Permutation> transversal;  // aligned with orbit
};

struct StabilizerChain {
  int n = 0;
  std::vector<ChainLevel> levels;          // one per point, trivial included
  std::vector<Permutation> strong_gens;    // all strong generators

  BigInt order() const;
  // membership by sifting through the chain
  bool sift(const Permutation& g) const;
};

// deterministic Schreier-Sims over the given generators, base 1..n
StabilizerChain build_chain_from(const std::vector<Permutation>& gens, int n);
StabilizerChain build_chain(const SylowStructure& S);

// Lexicographically minimal image array in the left coset g*G (G the chain's
// group), found greedily: at level i pick the orbit point minimizing g(point)
// and descend through that transversal element.
Permutation canonical_coset_rep(const StabilizerChain& chain,
                                const Permutation& g);

// allocation-free variant for hot loops; img and scratch hold chain.n entries
void canonical_inplace(const StabilizerChain& chain, uint16_t* img,
                       uint16_t* scratch);

}  // namespace dcos

#endif
