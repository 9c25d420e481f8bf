#ifndef DCOS_SYLOW_HPP
#define DCOS_SYLOW_HPP

#include <cstdint>
#include <vector>

#include "dcos/bigint.hpp"
#include "dcos/perm.hpp"
#include "dcos/rng.hpp"

namespace dcos {

// p-adic digits of n and the exponent m of the p-part of n!.
// m is evaluated both as sum floor(n/p^a) and as (n - digit_sum)/(p-1);
// profile() checks that the two agree.
struct PAdicProfile {
  int n = 0;
  int p = 0;
  std::vector<int> digits;  // a_0, a_1, ...; trailing digit nonzero
  int m = 0;
  int digit_sum = 0;
};

PAdicProfile profile(int n, int p);

bool is_prime(int p);

// |N_{S_n}(P) : P| = prod_i (p-1)^(i*a_i) * a_i!
BigInt normalizer_index(const PAdicProfile& pr);

// One wreath tree of the standard Sylow p-subgroup: height j acting on the
// p^j consecutive points [offset, offset+width). Height 0 is a fixed point.
struct TreeBlock {
  int height = 0;
  int offset = 0;  // 0-based
  int width = 1;   // p^height
};

// The standard Sylow p-subgroup of S_n: for each digit a_j, a_j trees of
// height j, laid out on consecutive points in decreasing height. Each
// internal node of a tree (an aligned p^l sub-block) contributes one cyclic
// generator adding p^(l-1) within the block; the node generators together
// generate the iterated wreath product, of order p^m.
struct SylowStructure {
  PAdicProfile prof;
  std::vector<TreeBlock> trees;
  std::vector<Permutation> generators;  // all node generators
  int order_exponent = 0;               // m
  std::vector<int> tree_of_point;       // 0-based point -> tree index

  int n() const { return prof.n; }
  int p() const { return prof.p; }
  BigInt order() const { return big_pow(prof.p, order_exponent); }
  // p^m fits in uint64? (used to guard enumeration paths)
  bool order_fits_u64() const;
  uint64_t order_u64() const;  // requires order_fits_u64()
};

SylowStructure build_sylow(int n, int p);

// structural membership test: O(n log n), no allocation beyond recursion
bool contains(const SylowStructure& S, const Permutation& g);

// mixed-radix bijection [0, p^m) <-> P; index 0 is the identity.
// Requires p^m < 2^63 (enumeration scale).
Permutation element_by_index(const SylowStructure& S, uint64_t idx);
uint64_t index_of(const SylowStructure& S, const Permutation& g);

// generator of Z(P): i -> i+1 cyclically within every aligned bottom
// p-block of every tree of height >= 1; fixes the a_0 leftover points.
// Throws if n < p (P trivial).
Permutation central_element(const SylowStructure& S);

// |P ∩ P^x| by full enumeration of P, testing x h x^-1 ∈ P.
// Refuses when p^m > 2^26.
BigInt intersection_order(const SylowStructure& S, const Permutation& x);

// exact test |P ∩ P^x| > 1 at any n (backtrack over both stabilizer
// structures; early exit on the first common nonidentity element)
bool intersection_nontrivial(const SylowStructure& S, const Permutation& x);

// uniform element of N_{S_n}(P): per tree a uniform wreath element and a
// uniform digit-scaling torus element, plus a uniform order-preserving
// permutation of same-height trees
Permutation random_normalizer_element(const SylowStructure& S,
                                      CounterRng& rng);

}  // namespace dcos

#endif
