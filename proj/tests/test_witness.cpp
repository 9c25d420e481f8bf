#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dcos/errors.hpp"
#include "dcos/intersect.hpp"
#include "dcos/sylow.hpp"
#include "dcos/witness.hpp"

using namespace dcos;

TEST_CASE("exception list") {
  CHECK(exceptions().size() == 6);
  CHECK(is_exception(8, 2, 0));
  CHECK(is_exception(6, 3, 1));
  CHECK_FALSE(is_exception(9, 3, 0));
  CHECK_FALSE(is_exception(8, 2, 1));
}

TEST_CASE("trivial-intersection witnesses") {
  CounterRng rng(1, 0);
  for (auto [n, p] : {std::pair{5, 2}, {6, 2}, {6, 3}, {7, 2}, {10, 5},
                      {11, 11}, {16, 2}}) {
    IntersectionWitness w = find_trivial_intersection(n, p, rng);
    CHECK(w.verification == 1);
    CHECK(w.k == 0);
  }
  CHECK_THROWS_AS(find_trivial_intersection(3, 3, rng), impossible_error);
  CHECK_THROWS_AS(find_trivial_intersection(2, 2, rng), impossible_error);
  CHECK_THROWS_AS(find_trivial_intersection(4, 2, rng), impossible_error);
  CHECK_THROWS_AS(find_trivial_intersection(8, 2, rng), impossible_error);
  // p > n: the trivial group trivially works
  CHECK(find_trivial_intersection(4, 5, rng).verification == 1);
}

TEST_CASE("exception triples are refused") {
  CounterRng rng(2, 0);
  for (const auto& e : exceptions())
    CHECK_THROWS_AS(construct_intersection(e[0], e[1], e[2], rng),
                    impossible_error);
}

TEST_CASE("exceptions are refuted by exhaustive scans") {
  CHECK(exception_refuted_exhaustively(2, 2, 0));
  CHECK(exception_refuted_exhaustively(3, 3, 0));
  CHECK(exception_refuted_exhaustively(4, 2, 0));
  CHECK(exception_refuted_exhaustively(4, 2, 1));
  CHECK(exception_refuted_exhaustively(6, 3, 1));
  // near-misses do exist: (4,2,2) is attainable
  CHECK_FALSE(exception_refuted_exhaustively(4, 2, 2));
}

TEST_CASE("witnesses for every k at small n") {
  CounterRng rng(3, 0);
  for (auto [n, p] : {std::pair{8, 2}, {9, 3}, {10, 2}, {9, 2}, {10, 5},
                      {7, 7}}) {
    const int m = profile(n, p).m;
    for (int k = 0; k <= m; ++k) {
      if (is_exception(n, p, k)) continue;
      IntersectionWitness w = construct_intersection(n, p, k, rng);
      CHECK(w.verification == big_pow(p, k));
    }
  }
}

TEST_CASE("identity witness at k = m") {
  CounterRng rng(4, 0);
  IntersectionWitness w = construct_intersection(12, 2, 10, rng);
  CHECK(w.x == Permutation::identity(12));
  CHECK(w.verification == big_pow(2, 10));
}

TEST_CASE("constructed witnesses for the recursive cases") {
  CounterRng rng(5, 0);
  // prime-power block recursion
  for (int k : {3, 5, 8, 12, 14}) {
    IntersectionWitness w = construct_intersection(16, 2, k, rng);
    CHECK(w.verification == big_pow(2, k));
  }
  // randomized specials
  for (int k : {1, 2}) {
    CHECK(construct_intersection(16, 2, k, rng).verification ==
          big_pow(2, k));
    CHECK(construct_intersection(12, 2, k, rng).verification ==
          big_pow(2, k));
  }
  // non-power of p with digit splitting
  for (int k : {1, 4, 7, 9}) {
    IntersectionWitness w = construct_intersection(13, 2, k, rng);
    CHECK(w.verification == big_pow(2, k));
  }
  for (int k : {1, 2, 3, 4}) {
    IntersectionWitness w = construct_intersection(12, 3, k, rng);
    CHECK(w.verification == big_pow(3, k));
  }
  // the p = 3 splitting that must avoid (6,3,1)
  IntersectionWitness w15 = construct_intersection(15, 3, 1, rng);
  CHECK(w15.verification == 3);
}

TEST_CASE("lemma 2.7 pairs") {
  CounterRng rng(6, 0);
  for (int kk : {2, 3}) {
    SylowPairWitness pr = lemma27_pair(kk, rng);
    const int n = (1 << kk) + 1;
    SylowStructure R = build_sylow(n, 2);
    Permutation xw = compose(pr.b, inverse(pr.a));
    CHECK(intersection_order_exact(R, xw) == 2);
    CHECK(inverse(pr.a).img[n - 1] != inverse(pr.b).img[n - 1]);
  }
}

TEST_CASE("lemma 2.7 recursion beyond enumeration scale") {
  CounterRng rng(7, 0);
  SylowPairWitness pr = lemma27_pair(5, rng);  // n = 33, |P| = 2^31
  const int n = 33;
  SylowStructure R = build_sylow(n, 2);
  Permutation xw = compose(pr.b, inverse(pr.a));
  CHECK(intersection_order_exact(R, xw) == 2);
  CHECK(inverse(pr.a).img[n - 1] != inverse(pr.b).img[n - 1]);
}

TEST_CASE("glue construction for p = 2, remainder 4, k = 1") {
  CounterRng rng(8, 0);
  IntersectionWitness w = construct_intersection(20, 2, 1, rng);
  CHECK(w.verification == 2);
  CHECK(w.notes.find("glue") != std::string::npos);
  IntersectionWitness w36 = construct_intersection(36, 2, 1, rng);
  CHECK(w36.verification == 2);
}

TEST_CASE("witnesses across a larger grid") {
  CounterRng rng(9, 0);
  for (int p : {2, 3, 5, 7, 11, 13}) {
    for (int n = 11; n <= 14; ++n) {
      const int m = profile(n, p).m;
      for (int k = 0; k <= m; ++k) {
        if (is_exception(n, p, k)) continue;
        IntersectionWitness w = construct_intersection(n, p, k, rng);
        CHECK(w.verification == big_pow(p, k));
      }
    }
  }
}
