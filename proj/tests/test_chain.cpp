#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "dcos/chain.hpp"
#include "dcos/perm.hpp"
#include "dcos/rng.hpp"
#include "dcos/sylow.hpp"

using namespace dcos;

TEST_CASE("chain orders match p^m") {
  for (auto [n, p] : {std::pair{4, 2}, {6, 2}, {8, 2}, {12, 2}, {6, 3},
                      {9, 3}, {12, 3}, {10, 5}, {11, 11}, {5, 5}}) {
    SylowStructure S = build_sylow(n, p);
    StabilizerChain c = build_chain(S);  // throws if order mismatches
    CHECK(c.order() == S.order());
  }
  // n = p: a single nontrivial level of size p
  for (int p : {2, 3, 5, 7}) {
    StabilizerChain c = build_chain(build_sylow(p, p));
    int nontrivial = 0;
    for (const auto& lv : c.levels)
      if (lv.orbit.size() > 1) {
        ++nontrivial;
        CHECK(lv.orbit.size() == static_cast<size_t>(p));
      }
    CHECK(nontrivial == 1);
  }
}

TEST_CASE("sifting agrees with structural membership") {
  for (auto [n, p] : {std::pair{8, 2}, {9, 3}, {12, 2}, {10, 5}}) {
    SylowStructure S = build_sylow(n, p);
    StabilizerChain c = build_chain(S);
    const uint64_t N = S.order_u64();
    for (uint64_t i = 0; i < N; ++i) CHECK(c.sift(element_by_index(S, i)));
    int hits = 0;
    for (int i = 0; i < 10000; ++i) {
      CounterRng rng(5, static_cast<uint64_t>(n) * 10000 + i);
      Permutation g = random_uniform(n, rng);
      const bool member = contains(S, g);
      CHECK(c.sift(g) == member);
      if (member) ++hits;
    }
    (void)hits;
  }
}

TEST_CASE("canonical rep: membership, idempotence, right invariance") {
  for (auto [n, p] : {std::pair{8, 2}, {9, 3}, {12, 2}}) {
    SylowStructure S = build_sylow(n, p);
    StabilizerChain c = build_chain(S);
    CounterRng rng(6, n);
    for (int i = 0; i < 500; ++i) {
      Permutation g = random_uniform(n, rng);
      Permutation r = canonical_coset_rep(c, g);
      CHECK(contains(S, compose(inverse(g), r)));  // r ∈ gP
      CHECK(canonical_coset_rep(c, r) == r);
      const uint64_t j = rng.next_below(S.order_u64());
      Permutation h = element_by_index(S, j);
      CHECK(canonical_coset_rep(c, compose(g, h)) == r);
    }
    // elements of P canonicalize to the identity
    for (int i = 0; i < 50; ++i) {
      const uint64_t j = rng.next_below(S.order_u64());
      CHECK(canonical_coset_rep(c, element_by_index(S, j)) ==
            Permutation::identity(n));
    }
  }
}

TEST_CASE("canonical rep equals the brute-force coset minimum") {
  {
    SylowStructure S = build_sylow(4, 2);
    StabilizerChain c = build_chain(S);
    std::vector<uint16_t> v = {0, 1, 2, 3};
    do {
      Permutation g{std::vector<uint16_t>(v.begin(), v.end())};
      Permutation best = g;
      for (uint64_t i = 0; i < 8; ++i) {
        Permutation cand = compose(g, element_by_index(S, i));
        if (cand < best) best = cand;
      }
      CHECK(canonical_coset_rep(c, g) == best);
    } while (std::next_permutation(v.begin(), v.end()));
  }
  {
    SylowStructure S = build_sylow(9, 3);
    StabilizerChain c = build_chain(S);
    for (int t = 0; t < 1000; ++t) {
      CounterRng rng(8, t);
      Permutation g = random_uniform(9, rng);
      Permutation best = g;
      for (uint64_t i = 0; i < 81; ++i) {
        Permutation cand = compose(g, element_by_index(S, i));
        if (cand < best) best = cand;
      }
      CHECK(canonical_coset_rep(c, g) == best);
    }
  }
}
