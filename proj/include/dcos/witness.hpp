#ifndef DCOS_WITNESS_HPP
#define DCOS_WITNESS_HPP

#include <array>
#include <string>
#include <vector>

#include "dcos/bigint.hpp"
#include "dcos/perm.hpp"
#include "dcos/rng.hpp"

namespace dcos {

// x with |P ∩ P^x| = p^k for the standard Sylow subgroup P of S_n.
// verification holds the measured intersection order; every witness is
// re-measured before being returned.
struct IntersectionWitness {
  int n = 0;
  int p = 0;
  int k = 0;
  Permutation x;
  std::string method;  // "constructed" | "random-search"
  std::string notes;
  BigInt verification = 0;
};

// the six triples for which no Sylow pair with |P∩Q| = p^k exists
const std::vector<std::array<int, 3>>& exceptions();
bool is_exception(int n, int p, int k);

// measured |P ∩ P^x|: full enumeration when |P| <= 2^20, else the exact
// backtrack chain
BigInt measure_intersection(int n, int p, const Permutation& x);

// random x until the intersection is trivial; errors on the four pairs
// where that is provably impossible
IntersectionWitness find_trivial_intersection(int n, int p, CounterRng& rng,
                                              uint64_t max_tries = 100000);

// witness for any non-exception (n,p,k), 0 <= k <= m: randomized base cases
// for n <= 10 and the handful of computer-checked triples, then recursion
// on blocks (prime-power case) or on the leading p-power (general case)
IntersectionWitness construct_intersection(int n, int p, int k,
                                           CounterRng& rng);

// Sylow pair on n = 2^kk + 1 points with |P∩Q| = 2 and no common fixed
// point, as conjugators from the standard group (tree on the first 2^kk
// points): P = R^a, Q = R^b.
struct SylowPairWitness {
  int n = 0;
  Permutation a;
  Permutation b;
};

SylowPairWitness lemma27_pair(int kk, CounterRng& rng);

// full scan over S_n certifying that no x attains |P ∩ P^x| = p^k
bool exception_refuted_exhaustively(int n, int p, int k);

}  // namespace dcos

#endif
