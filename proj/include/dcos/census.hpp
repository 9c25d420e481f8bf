#ifndef DCOS_CENSUS_HPP
#define DCOS_CENSUS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dcos/bigint.hpp"
#include "dcos/chain.hpp"
#include "dcos/perm.hpp"
#include "dcos/sylow.hpp"

namespace dcos {

// Exact double-coset census: counts[k] is the number of (P,P)-double cosets
// of size p^(m+k), 0 <= k <= m. Invariants: sum_k counts[k] * p^(m+k) = n!
// and counts[0] = |N:P|.
struct CensusTable {
  int n = 0;
  int p = 0;
  int m = 0;
  std::string method;                  // exhaustive | classes | formula
  std::vector<BigInt> counts;          // index k
  BigInt total = 0;
};

struct CensusBudget {
  uint64_t coset_space_limit = 100000000ull;  // left cosets of P in S_n
};

// BFS over the left-coset space of P keyed by packed canonical
// representatives; each unvisited coset's P-orbit under left multiplication
// is one double coset (orbit size p^k -> size p^(m+k)).
CensusTable census_exhaustive(int n, int p, const CensusBudget& budget = {});

// Monte Carlo distribution over size classes: each uniform x falls in the
// double coset of size p^(m+k) with k = m - log_p |P ∩ P^x|.
struct SampledCensus {
  int n = 0;
  int p = 0;
  int m = 0;
  uint64_t samples = 0;
  uint64_t seed = 0;
  std::vector<uint64_t> hits;  // per k
};

SampledCensus census_sampled(int n, int p, uint64_t samples, uint64_t seed,
                             int threads = 1);

// |P\S_n/P| by the conjugacy-class formula: (n!/|P|^2) sum_C |C∩P|^2/|C|,
// bucketing one full enumeration of P by cycle type. Exact integer result.
BigInt total_via_classes(int n, int p);

// Sylow-counting identity: with d(p^k) = #{Q Sylow : |P:P∩Q| = p^k},
// the census must satisfy counts[k] = d(p^k)/p^k * |N:P|, and p^k | d(p^k).
struct LemmaDReport {
  int n = 0;
  int p = 0;
  BigInt sylow_count = 0;
  std::vector<BigInt> d;  // d(p^k) for k = 0..m
  bool pass = false;
  std::vector<std::string> failures;
};

LemmaDReport verify_lemma_d(int n, int p);

// |PxP| = |P|^2 / |P ∩ P^x|
BigInt double_coset_size(const SylowStructure& S, const Permutation& x);

// lexicographically least image array in PxP: canonical key for double-coset
// identification at small scale (canonicalize the left coset, then minimize
// over its P-orbit)
Permutation double_coset_canonical(const SylowStructure& S,
                                   const StabilizerChain& chain,
                                   const Permutation& x);

}  // namespace dcos

#endif
