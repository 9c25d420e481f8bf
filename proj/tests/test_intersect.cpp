#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "dcos/intersect.hpp"
#include "dcos/perm.hpp"
#include "dcos/rng.hpp"
#include "dcos/sylow.hpp"

using namespace dcos;

TEST_CASE("backtrack order equals enumeration order, exhaustively") {
  for (auto [n, p] : {std::pair{4, 2}, {5, 2}, {6, 2}, {6, 3}, {5, 5},
                      {7, 3}, {3, 3}, {7, 7}}) {
    SylowStructure S = build_sylow(n, p);
    std::vector<uint16_t> v(n);
    for (int i = 0; i < n; ++i) v[i] = static_cast<uint16_t>(i);
    do {
      Permutation x{std::vector<uint16_t>(v.begin(), v.end())};
      const BigInt a = intersection_order(S, x);
      const BigInt b = intersection_order_exact(S, x);
      REQUIRE(a == b);
      REQUIRE(intersection_nontrivial(S, x) == (a > 1));
    } while (std::next_permutation(v.begin(), v.end()));
  }
}

TEST_CASE("backtrack order equals enumeration order on random elements") {
  for (auto [n, p] : {std::pair{12, 2}, {9, 3}, {12, 3}, {10, 5}, {8, 2},
                      {11, 11}, {14, 7}}) {
    SylowStructure S = build_sylow(n, p);
    for (int i = 0; i < 10000; ++i) {
      CounterRng rng(301, static_cast<uint64_t>(n) * 1000 + i);
      Permutation x = random_uniform(n, rng);
      const BigInt a = intersection_order(S, x);
      REQUIRE(a == intersection_order_exact(S, x));
      REQUIRE(intersection_nontrivial(S, x) == (a > 1));
    }
  }
}

TEST_CASE("identity and normalizer give the full group") {
  for (auto [n, p] : {std::pair{12, 2}, {9, 3}, {30, 2}, {27, 3}}) {
    SylowStructure S = build_sylow(n, p);
    CHECK(intersection_order_exact(S, Permutation::identity(n)) == S.order());
    CounterRng rng(55, n);
    for (int i = 0; i < 10; ++i) {
      Permutation u = random_normalizer_element(S, rng);
      CHECK(intersection_order_exact(S, u) == S.order());
    }
  }
}

TEST_CASE("|P ∩ P^x| is invariant under x -> ux for u in N(P)") {
  for (auto [n, p] : {std::pair{10, 2}, {9, 3}, {12, 3}}) {
    SylowStructure S = build_sylow(n, p);
    CounterRng rng(77, n);
    for (int i = 0; i < 300; ++i) {
      Permutation x = random_uniform(n, rng);
      Permutation u = random_normalizer_element(S, rng);
      CHECK(intersection_order_exact(S, x) ==
            intersection_order_exact(S, compose(u, x)));
    }
  }
}

TEST_CASE("chain structure is a genuine stabilizer chain of the intersection") {
  for (auto [n, p] : {std::pair{8, 2}, {9, 3}, {12, 2}}) {
    SylowStructure S = build_sylow(n, p);
    for (int i = 0; i < 300; ++i) {
      CounterRng rng(99, static_cast<uint64_t>(n) * 500 + i);
      Permutation x = random_uniform(n, rng);
      Permutation xinv = inverse(x);
      IntersectionChain c = intersection_chain(S, x);
      // every transversal element lies in P and in P^x and maps base right
      for (const auto& lv : c.levels) {
        for (size_t oi = 0; oi < lv.orbit.size(); ++oi) {
          const Permutation& u = lv.transversal[oi];
          CHECK(u.img[lv.base] == lv.orbit[oi]);
          CHECK(contains(S, u));
          CHECK(contains(S, conjugate(u, xinv)));
          for (int b2 = 0; b2 < lv.base; ++b2) CHECK(u.img[b2] == b2);
        }
      }
    }
  }
}

TEST_CASE("uniform intersection elements are uniform on a small case") {
  SylowStructure S = build_sylow(6, 2);
  // pick some x with |P ∩ P^x| = 4
  Permutation x;
  for (int i = 0;; ++i) {
    CounterRng rng(123, i);
    x = random_uniform(6, rng);
    if (intersection_order_exact(S, x) == 4) break;
  }
  IntersectionChain c = intersection_chain(S, x);
  CHECK(c.order == 4);
  std::map<Permutation, int> counts;
  const int trials = 40000;
  for (int i = 0; i < trials; ++i) {
    CounterRng rng(321, i);
    counts[random_intersection_element(c, rng)]++;
  }
  CHECK(counts.size() == 4);
  Permutation xinv = inverse(x);
  for (const auto& [g, cnt] : counts) {
    CHECK(contains(S, g));
    CHECK(contains(S, conjugate(g, xinv)));
    CHECK(cnt > 10000 * 0.9);
    CHECK(cnt < 10000 * 1.1);
  }
}

TEST_CASE("large-degree smoke: exactness cross-check via double counting") {
  // at n = 50 the backtrack must still agree with itself under
  // normalizer-translation and inversion symmetries
  SylowStructure S = build_sylow(50, 2);
  CounterRng rng(404, 0);
  for (int i = 0; i < 50; ++i) {
    Permutation x = random_uniform(50, rng);
    const BigInt a = intersection_order_exact(S, x);
    CHECK(a == intersection_order_exact(S, inverse(x)));
    CHECK(intersection_nontrivial(S, x) == (a > 1));
  }
}
