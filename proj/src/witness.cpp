#include "dcos/witness.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "dcos/errors.hpp"
#include "dcos/intersect.hpp"
#include "dcos/sylow.hpp"

namespace dcos {

const std::vector<std::array<int, 3>>& exceptions() {
  static const std::vector<std::array<int, 3>> ex = {
      {2, 2, 0}, {4, 2, 0}, {4, 2, 1}, {8, 2, 0}, {3, 3, 0}, {6, 3, 1}};
  return ex;
}

bool is_exception(int n, int p, int k) {
  for (const auto& e : exceptions())
    if (e[0] == n && e[1] == p && e[2] == k) return true;
  return false;
}

BigInt measure_intersection(int n, int p, const Permutation& x) {
  SylowStructure S = build_sylow(n, p);
  if (S.order_fits_u64() && S.order_u64() <= (1ull << 20))
    return intersection_order(S, x);
  return intersection_order_exact(S, x);
}

namespace {

bool is_trivial_pair_exception(int n, int p) {
  return (p == 2 && (n == 2 || n == 4 || n == 8)) || (p == 3 && n == 3);
}

Permutation extend_degree(const Permutation& g, int n) {
  Permutation r = Permutation::identity(n);
  for (int i = 0; i < g.degree(); ++i) r.img[i] = g.img[i];
  return r;
}

Permutation shift_embed(const Permutation& g, int offset, int n) {
  Permutation r = Permutation::identity(n);
  for (int i = 0; i < g.degree(); ++i)
    r.img[offset + i] = static_cast<uint16_t>(g.img[i] + offset);
  return r;
}

// order-preserving p-fold blowup: blocks of p consecutive points are
// permuted the way g permutes points
Permutation blowup(const Permutation& g, int p) {
  const int nb = g.degree();
  Permutation r = Permutation::identity(nb * p);
  for (int b = 0; b < nb; ++b)
    for (int rpt = 0; rpt < p; ++rpt)
      r.img[b * p + rpt] = static_cast<uint16_t>(g.img[b] * p + rpt);
  return r;
}

IntersectionWitness make_verified(int n, int p, int k, Permutation x,
                                  std::string method, std::string notes) {
  IntersectionWitness w;
  w.n = n;
  w.p = p;
  w.k = k;
  w.x = std::move(x);
  w.method = std::move(method);
  w.notes = std::move(notes);
  w.verification = measure_intersection(n, p, w.x);
  if (w.verification != big_pow(p, k)) {
    std::ostringstream msg;
    msg << "witness verification failed for (" << n << "," << p << "," << k
        << "): measured " << w.verification.str();
    throw std::logic_error(msg.str());
  }
  return w;
}

IntersectionWitness random_search(int n, int p, int k, CounterRng& rng,
                                  uint64_t max_tries) {
  SylowStructure S = build_sylow(n, p);
  const BigInt target = big_pow(p, k);
  for (uint64_t i = 0; i < max_tries; ++i) {
    Permutation x = random_uniform(n, rng);
    if (intersection_order_exact(S, x) == target)
      return make_verified(n, p, k, std::move(x), "random-search", "");
  }
  std::ostringstream msg;
  msg << "witness search budget exhausted for (" << n << "," << p << "," << k
      << ") after " << max_tries << " tries (not a proof of impossibility)";
  throw std::runtime_error(msg.str());
}

bool is_prime_power_of(int n, int p, int& ell) {
  ell = 0;
  while (n > 1 && n % p == 0) {
    n /= p;
    ++ell;
  }
  return n == 1 && ell >= 1;
}

// lexicographically least (k_1..k_p), sum k, each within [0,cap], k_1 != k_2,
// no (nsub,p,k_i) exception
bool find_case1_split(int p, int k, int cap, int nsub, std::vector<int>& ks) {
  ks.assign(p, -1);
  struct Rec {
    int p, k, cap, nsub;
    std::vector<int>* ks;
    bool go(int pos, int left) {
      if (pos == p) return left == 0;
      const int rest_cap = (p - pos - 1) * cap;
      for (int v = 0; v <= cap && v <= left; ++v) {
        if (left - v > rest_cap) continue;
        if (pos == 1 && (*ks)[0] == v) continue;
        if (is_exception(nsub, p, v)) continue;
        (*ks)[pos] = v;
        if (go(pos + 1, left - v)) return true;
      }
      (*ks)[pos] = -1;
      return false;
    }
  } rec{p, k, cap, nsub, &ks};
  return rec.go(0, k);
}

// completes the partial map dom[i] -> ran[i] to a permutation of degree n
// by matching the unused points in increasing order
Permutation complete_map(const std::vector<int>& dom,
                         const std::vector<int>& ran, int n) {
  std::vector<int> img(n, -1);
  std::vector<char> used(n, 0);
  for (size_t i = 0; i < dom.size(); ++i) {
    img[dom[i]] = ran[i];
    used[ran[i]] = 1;
  }
  int next = 0;
  for (int q = 0; q < n; ++q) {
    if (img[q] >= 0) continue;
    while (used[next]) ++next;
    img[q] = next;
    used[next] = 1;
  }
  std::vector<uint16_t> v(n);
  for (int q = 0; q < n; ++q) v[q] = static_cast<uint16_t>(img[q]);
  return Permutation(std::move(v));
}

// the witness x with |P ∩ P^x| = 2 for p = 2, n - n1 = 4, built from a
// Lemma-2.7 pair on n1+1 points and a pair of trivially-intersecting
// 2-Sylows of the two overlapping 4-point sets
Permutation glue_route(int n, int n1, CounterRng& rng);

IntersectionWitness construct_impl(int n, int p, int k, CounterRng& rng) {
  const PAdicProfile pr = profile(n, p);
  const int m = pr.m;
  if (k < 0 || k > m)
    throw std::invalid_argument("construct_intersection: k outside [0, m]");
  if (is_exception(n, p, k)) {
    std::ostringstream msg;
    msg << "provably impossible: (" << n << "," << p << "," << k
        << ") admits no Sylow pair with |P∩Q| = p^k";
    throw impossible_error(msg.str());
  }
  if (k == m)
    return make_verified(n, p, k, Permutation::identity(n), "constructed",
                         "P = Q");
  if (k == 0) return find_trivial_intersection(n, p, rng);
  if (n <= 10) return random_search(n, p, k, rng, 200000);
  const bool special =
      (p == 2) && ((n == 12 && (k == 1 || k == 2)) ||
                   (n == 16 && (k == 1 || k == 2)));
  if (special) return random_search(n, p, k, rng, 200000);

  int ell = 0;
  if (is_prime_power_of(n, p, ell)) {
    const int nsub = n / p;
    const int msub = profile(nsub, p).m;
    if (k == m - 1) {
      // bottom blocks of size p stay; recurse on the block-permutation
      // Sylow with |T1 : T1∩T2| = p
      IntersectionWitness sub = construct_impl(n / p, p,
                                               profile(n / p, p).m - 1, rng);
      Permutation x = blowup(sub.x, p);
      return make_verified(n, p, k, std::move(x), "constructed",
                           "block-blowup of (" + std::to_string(n / p) + "," +
                               std::to_string(p) + "," +
                               std::to_string(profile(n / p, p).m - 1) + ")");
    }
    std::vector<int> ks;
    if (!find_case1_split(p, k, msub, nsub, ks))
      throw std::logic_error("construct_intersection: no valid block split");
    Permutation x = Permutation::identity(n);
    for (int i = 0; i < p; ++i) {
      if (ks[i] == msub) continue;  // identity on that block
      IntersectionWitness sub = construct_impl(nsub, p, ks[i], rng);
      Permutation part = shift_embed(sub.x, i * nsub, n);
      x = compose(x, part);
    }
    std::ostringstream notes;
    notes << "split (";
    for (int i = 0; i < p; ++i) notes << (i ? "," : "") << ks[i];
    notes << ") over " << p << " blocks of " << nsub;
    return make_verified(n, p, k, std::move(x), "constructed", notes.str());
  }

  // n is not a p-power: peel the leading p-power
  int n1 = p;
  while (static_cast<long>(n1) * p <= n) n1 *= p;
  const int n2 = n - n1;
  const int m1 = profile(n1, p).m;
  const int m2 = n2 >= 1 ? profile(n2, p).m : 0;
  for (int k1 = std::max(0, k - m2); k1 <= std::min(m1, k); ++k1) {
    const int k2 = k - k1;
    if (is_exception(n1, p, k1) || is_exception(n2, p, k2)) continue;
    Permutation x = Permutation::identity(n);
    if (k1 != m1) {
      IntersectionWitness s1 = construct_impl(n1, p, k1, rng);
      x = compose(x, extend_degree(s1.x, n));
    }
    if (k2 != m2) {
      IntersectionWitness s2 = construct_impl(n2, p, k2, rng);
      x = compose(x, shift_embed(s2.x, n1, n));
    }
    std::ostringstream notes;
    notes << "split (" << k1 << "," << k2 << ") over (" << n1 << "," << n2
          << ")";
    return make_verified(n, p, k, std::move(x), "constructed", notes.str());
  }
  if (p == 2 && n2 == 4 && k == 1) {
    Permutation x = glue_route(n, n1, rng);
    return make_verified(n, p, k, std::move(x), "constructed",
                         "no-common-fixed-point pair glued over (" +
                             std::to_string(n1) + "+1, 4)");
  }
  throw std::logic_error("construct_intersection: unreachable case");
}

Permutation glue_route(int n, int n1, CounterRng& rng) {
  // ell with n1 = 2^ell
  int ell = 0;
  for (int v = n1; v > 1; v /= 2) ++ell;
  SylowPairWitness pair = lemma27_pair(ell, rng);  // degree n1 + 1
  Permutation A = extend_degree(pair.a, n);
  Permutation B = extend_degree(pair.b, n);
  Permutation Ainv = inverse(A);
  Permutation Binv = inverse(B);
  const int fP = Ainv.img[n1];  // unique fixed point of P1 = R^A
  const int fQ = Binv.img[n1];
  if (fP == fQ) throw std::logic_error("glue_route: common fixed point");
  // move the pair so that P1 fixes n1 and Q1 fixes n1-1
  Permutation g = complete_map({n1, n1 - 1}, {fP, fQ}, n);
  Permutation alpha = compose(A, g);
  Permutation beta1 = compose(B, g);
  if (inverse(alpha).img[n1] != n1)
    throw std::logic_error("glue_route: alpha does not fix n1");

  // the standard D8 on {n1..n1+3} and a trivially-intersecting D8 on
  // {n1-1, n1+1, n1+2, n1+3}
  SylowStructure T4 = build_sylow(4, 2);
  std::vector<Permutation> t4elems;
  for (uint64_t i = 0; i < 8; ++i)
    t4elems.push_back(shift_embed(element_by_index(T4, i), n1, n));
  std::vector<uint64_t> t4packed;
  auto key_of = [&](const Permutation& h) {
    uint64_t key = 0;
    for (int q = n1 - 1; q < n; ++q) key = (key << 4) | (h.img[q] - (n1 - 1));
    return key;
  };
  // keys over the 5 points {n1-1..n1+3} suffice: all candidates fix the rest
  for (const auto& h : t4elems) t4packed.push_back(key_of(h));
  std::sort(t4packed.begin(), t4packed.end());

  const std::vector<int> n2prime = {n1 - 1, n1 + 1, n1 + 2, n1 + 3};
  std::vector<int> w = {0, 1, 2, 3};
  Permutation gamma;
  bool found = false;
  do {
    std::vector<int> dom, ran;
    for (int r = 0; r < 4; ++r) {
      dom.push_back(n1 + r);
      ran.push_back(n2prime[w[r]]);
    }
    dom.push_back(n1 - 1);
    ran.push_back(n1);
    Permutation cand = complete_map(dom, ran, n);
    bool trivial = true;
    for (const auto& h : t4elems) {
      if (h.is_identity()) continue;
      Permutation c = conjugate(h, cand);
      if (std::binary_search(t4packed.begin(), t4packed.end(), key_of(c))) {
        trivial = false;
        break;
      }
    }
    if (trivial) {
      gamma = std::move(cand);
      found = true;
      break;
    }
  } while (std::next_permutation(w.begin(), w.end()));
  if (!found) throw std::logic_error("glue_route: no trivially-meeting D8");

  // beta: beta1 away from n1-1, gamma on {n1-1, n1+1, n1+2, n1+3}
  std::vector<uint16_t> beta(n);
  for (int t = 0; t < n; ++t) beta[t] = static_cast<uint16_t>(t);
  for (int t = 0; t <= n1; ++t)
    if (t != n1 - 1) beta[t] = beta1.img[t];
  for (int t : n2prime) beta[t] = gamma.img[t];
  Permutation betap{std::move(beta)};
  if (!is_valid_permutation(betap))
    throw std::logic_error("glue_route: beta is not a permutation");
  return compose(betap, inverse(alpha));
}

}  // namespace

IntersectionWitness find_trivial_intersection(int n, int p, CounterRng& rng,
                                              uint64_t max_tries) {
  if (is_trivial_pair_exception(n, p)) {
    std::ostringstream msg;
    msg << "provably impossible: all Sylow " << p << "-subgroups of S_" << n
        << " intersect nontrivially";
    throw impossible_error(msg.str());
  }
  const PAdicProfile pr = profile(n, p);
  if (pr.m == 0)
    return make_verified(n, p, 0, Permutation::identity(n), "constructed",
                         "P trivial");
  SylowStructure S = build_sylow(n, p);
  for (uint64_t i = 0; i < max_tries; ++i) {
    Permutation x = random_uniform(n, rng);
    if (!intersection_nontrivial(S, x))
      return make_verified(n, p, 0, std::move(x), "random-search", "");
  }
  std::ostringstream msg;
  msg << "witness search budget exhausted for trivial intersection at (" << n
      << "," << p << ") after " << max_tries
      << " tries (not a proof of impossibility)";
  throw std::runtime_error(msg.str());
}

IntersectionWitness construct_intersection(int n, int p, int k,
                                           CounterRng& rng) {
  if (!is_prime(p)) throw std::invalid_argument("construct: p not prime");
  return construct_impl(n, p, k, rng);
}

SylowPairWitness lemma27_pair(int kk, CounterRng& rng) {
  if (kk < 2) throw std::invalid_argument("lemma27_pair: k >= 2 required");
  const int n = (1 << kk) + 1;
  SylowStructure R = build_sylow(n, 2);  // tree on 2^kk points + fixed point
  if (kk <= 4) {
    for (uint64_t i = 0; i < 200000; ++i) {
      Permutation y = random_uniform(n, rng);
      if (y.img[n - 1] == n - 1) continue;  // shared fixed point
      if (intersection_order_exact(R, y) == 2) {
        SylowPairWitness out;
        out.n = n;
        out.a = Permutation::identity(n);
        out.b = std::move(y);
        return out;
      }
    }
    throw std::runtime_error("lemma27_pair: search budget exhausted");
  }
  const int half = 1 << (kk - 1);
  // trivial-intersection pair on the first half
  Permutation y1 =
      extend_degree(find_trivial_intersection(half, 2, rng).x, n);
  // recursive pair on the second half plus the extra point
  SylowPairWitness sub = lemma27_pair(kk - 1, rng);
  Permutation A2 = shift_embed(sub.a, half, n);
  Permutation B2 = shift_embed(sub.b, half, n);
  Permutation A2inv = inverse(A2);
  Permutation B2inv = inverse(B2);
  const int fP = A2inv.img[n - 1];
  const int fQ = B2inv.img[n - 1];

  // conjugator A with R^A = P1 P2 <x>, x the pairing involution
  std::vector<uint16_t> A(n);
  for (int t = 0; t < n; ++t) A[t] = static_cast<uint16_t>(t);
  for (int j = 0; j < half; ++j) {
    const int cP = A2inv.img[j + half];
    A[cP] = static_cast<uint16_t>(j + half);
  }
  A[fP] = static_cast<uint16_t>(n - 1);
  Permutation Ap{std::move(A)};
  if (!is_valid_permutation(Ap))
    throw std::logic_error("lemma27_pair: A is not a permutation");

  std::vector<uint16_t> B(n);
  for (int t = 0; t < n; ++t) B[t] = static_cast<uint16_t>(t);
  for (int j = 0; j < half; ++j) B[j] = y1.img[j];
  for (int j = 0; j < half; ++j) {
    const int cQ = B2inv.img[y1.img[j] + half];
    B[cQ] = static_cast<uint16_t>(y1.img[j] + half);
  }
  B[fQ] = static_cast<uint16_t>(n - 1);
  Permutation Bp{std::move(B)};
  if (!is_valid_permutation(Bp))
    throw std::logic_error("lemma27_pair: B is not a permutation");

  // verify: intersection of order 2, disjoint fixed points
  Permutation xw = compose(Bp, inverse(Ap));
  if (intersection_order_exact(R, xw) != 2)
    throw std::logic_error("lemma27_pair: pair fails |P∩Q| = 2");
  if (inverse(Ap).img[n - 1] == inverse(Bp).img[n - 1])
    throw std::logic_error("lemma27_pair: pair shares a fixed point");
  SylowPairWitness out;
  out.n = n;
  out.a = std::move(Ap);
  out.b = std::move(Bp);
  return out;
}

bool exception_refuted_exhaustively(int n, int p, int k) {
  SylowStructure S = build_sylow(n, p);
  const BigInt target = big_pow(p, k);
  std::vector<uint16_t> t(n);
  for (int i = 0; i < n; ++i) t[i] = static_cast<uint16_t>(i);
  do {
    Permutation x{std::vector<uint16_t>(t.begin(), t.end())};
    if (intersection_order_exact(S, x) == target) return false;
  } while (std::next_permutation(t.begin(), t.end()));
  return true;
}

}  // namespace dcos
