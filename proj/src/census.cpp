#include "dcos/census.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "dcos/chain.hpp"
#include "dcos/errors.hpp"
#include "dcos/intersect.hpp"
#include "dcos/rng.hpp"

namespace dcos {

namespace {

// open-addressing set of packed canonical keys, sized up front; bit 63 of a
// slot marks the coset's double coset as already counted
class CosetTable {
 public:
  explicit CosetTable(uint64_t expected) {
    uint64_t cap = 64;
    while (cap < expected * 2) cap <<= 1;
    slots_.assign(cap, EMPTY);
    mask_ = cap - 1;
  }

  // returns slot index; sets fresh=true when newly inserted
  size_t insert(uint64_t key, bool& fresh) {
    size_t i = CounterRng::mix(key) & mask_;
    for (;;) {
      uint64_t cur = slots_[i];
      if (cur == EMPTY) {
        slots_[i] = key;
        ++size_;
        fresh = true;
        return i;
      }
      if ((cur & KEYMASK) == key) {
        fresh = false;
        return i;
      }
      i = (i + 1) & mask_;
    }
  }

  bool claimed(size_t slot) const { return (slots_[slot] & CLAIMED) != 0; }
  void claim(size_t slot) { slots_[slot] |= CLAIMED; }
  uint64_t size() const { return size_; }

  static constexpr uint64_t EMPTY = ~0ull;
  static constexpr uint64_t CLAIMED = 1ull << 63;
  static constexpr uint64_t KEYMASK = CLAIMED - 1;

 private:
  std::vector<uint64_t> slots_;
  uint64_t mask_ = 0;
  uint64_t size_ = 0;
};

}  // namespace

CensusTable census_exhaustive(int n, int p, const CensusBudget& budget) {
  SylowStructure S = build_sylow(n, p);
  const int m = S.order_exponent;
  const BigInt nfact = big_factorial(n);
  const BigInt cosets_big = exact_div(nfact, big_pow(p, m), "census");
  if (cosets_big > budget.coset_space_limit) {
    std::ostringstream msg;
    const BigInt mb = cosets_big * 16 / 1000000;
    msg << "census_exhaustive(" << n << "," << p << "): " << cosets_big.str()
        << " left cosets exceed the budget of " << budget.coset_space_limit
        << " keys (approx. " << mb.str() << " MB required)";
    throw budget_error(msg.str());
  }
  if (n > 15)
    throw budget_error("census_exhaustive: packed keys require n <= 15");
  const uint64_t expected = static_cast<uint64_t>(cosets_big);

  StabilizerChain chain = build_chain(S);
  CosetTable table(expected);
  std::vector<uint64_t> queue;
  queue.reserve(expected);

  std::vector<uint16_t> work(n), scratch(n);
  auto canon_key = [&](const uint16_t* img) {
    for (int i = 0; i < n; ++i) work[i] = img[i];
    canonical_inplace(chain, work.data(), scratch.data());
    uint64_t key = 0;
    for (int i = 0; i < n; ++i) key = (key << 4) | work[i];
    return key;
  };

  {
    Permutation id = Permutation::identity(n);
    uint64_t k0 = canon_key(id.img.data());
    bool fresh;
    table.insert(k0, fresh);
    queue.push_back(k0);
  }

  std::vector<uint64_t> counts(m + 1, 0);
  std::vector<uint64_t> orbit;
  std::vector<uint16_t> rep(n), nb(n);
  std::vector<uint16_t> pos(n);  // inverse of rep for transposition edges

  size_t head = 0;
  uint64_t visited_cosets = 0;
  while (head < queue.size()) {
    const uint64_t key = queue[head++];
    bool fresh;
    const size_t slot = table.insert(key, fresh);
    if (table.claimed(slot)) continue;

    // close the P-orbit of this left coset under left multiplication
    orbit.assign(1, key);
    table.claim(slot);
    for (size_t oh = 0; oh < orbit.size(); ++oh) {
      uint64_t cur = orbit[oh];
      for (int i = n - 1; i >= 0; --i) {
        rep[i] = static_cast<uint16_t>(cur & 0xF);
        cur >>= 4;
      }
      for (const Permutation& h : S.generators) {
        for (int i = 0; i < n; ++i) nb[i] = h.img[rep[i]];
        const uint64_t nk = canon_key(nb.data());
        bool f2;
        const size_t s2 = table.insert(nk, f2);
        if (!table.claimed(s2)) {
          table.claim(s2);
          orbit.push_back(nk);
        }
      }
    }
    // orbit size is p^k
    uint64_t osz = orbit.size();
    int k = 0;
    while (osz % p == 0) {
      osz /= p;
      ++k;
    }
    if (osz != 1 || k > m)
      throw std::logic_error("census: P-orbit size is not a power of p");
    ++counts[k];
    visited_cosets += orbit.size();

    // expand S_n edges (adjacent transpositions, acting on values) from
    // every coset of the orbit
    for (uint64_t cur0 : orbit) {
      uint64_t cur = cur0;
      for (int i = n - 1; i >= 0; --i) {
        rep[i] = static_cast<uint16_t>(cur & 0xF);
        cur >>= 4;
      }
      for (int i = 0; i < n; ++i) pos[rep[i]] = static_cast<uint16_t>(i);
      for (int val = 0; val + 1 < n; ++val) {
        for (int i = 0; i < n; ++i) nb[i] = rep[i];
        std::swap(nb[pos[val]], nb[pos[val + 1]]);
        const uint64_t nk = canon_key(nb.data());
        bool f2;
        const size_t s2 = table.insert(nk, f2);
        if (f2 && !table.claimed(s2)) queue.push_back(nk);
      }
    }
  }

  if (visited_cosets != expected)
    throw std::logic_error("census: coset space not fully visited");

  CensusTable out;
  out.n = n;
  out.p = p;
  out.m = m;
  out.method = "exhaustive";
  out.counts.assign(m + 1, 0);
  BigInt mass = 0;
  for (int k = 0; k <= m; ++k) {
    out.counts[k] = counts[k];
    out.total += counts[k];
    mass += BigInt(counts[k]) * big_pow(p, m + k);
  }
  if (mass != nfact)
    throw std::logic_error("census: mass check sum counts[k] p^(m+k) != n!");
  return out;
}

SampledCensus census_sampled(int n, int p, uint64_t samples, uint64_t seed,
                             int threads) {
  SylowStructure S = build_sylow(n, p);
  const int m = S.order_exponent;
  SampledCensus out;
  out.n = n;
  out.p = p;
  out.m = m;
  out.samples = samples;
  out.seed = seed;
  out.hits.assign(m + 1, 0);
  if (threads < 1) threads = 1;

  auto run_range = [&](uint64_t lo, uint64_t hi, std::vector<uint64_t>& hits) {
    hits.assign(m + 1, 0);
    for (uint64_t i = lo; i < hi; ++i) {
      CounterRng rng(seed, i);
      Permutation x = random_uniform(n, rng);
      BigInt ord = intersection_order_exact(S, x);
      int j = 0;
      while (ord > 1) {
        ord = exact_div(ord, p, "census_sampled");
        ++j;
      }
      ++hits[m - j];
    }
  };

  if (threads == 1) {
    run_range(0, samples, out.hits);
    return out;
  }
  std::vector<std::vector<uint64_t>> parts(threads);
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    uint64_t lo = samples * t / threads;
    uint64_t hi = samples * (t + 1) / threads;
    pool.emplace_back(run_range, lo, hi, std::ref(parts[t]));
  }
  for (auto& th : pool) th.join();
  for (const auto& part : parts)
    for (int k = 0; k <= m; ++k) out.hits[k] += part[k];
  return out;
}

BigInt total_via_classes(int n, int p) {
  SylowStructure S = build_sylow(n, p);
  const int m = S.order_exponent;
  if (m == 0) return big_factorial(n);  // trivial P: every element its own coset
  if (!S.order_fits_u64() || S.order_u64() > (1ull << 26))
    throw budget_error("total_via_classes: |P| > 2^26");
  const uint64_t N = S.order_u64();
  std::map<CycleType, uint64_t> bucket;
  for (uint64_t i = 0; i < N; ++i) ++bucket[cycle_type(element_by_index(S, i))];
  BigInt sum = 0;
  for (const auto& [ct, c] : bucket) {
    BigInt z = 1;  // centralizer order prod j^mj mj!
    for (const auto& [j, mj] : ct.mult) {
      z *= big_pow(j, mj);
      z *= big_factorial(mj);
    }
    sum += BigInt(c) * BigInt(c) * z;
  }
  return exact_div(sum, big_pow(p, 2 * m), "total_via_classes");
}

LemmaDReport verify_lemma_d(int n, int p) {
  SylowStructure S = build_sylow(n, p);
  const int m = S.order_exponent;
  const BigInt nidx = normalizer_index(S.prof);
  const BigInt nsyl =
      exact_div(big_factorial(n), big_pow(p, m) * nidx, "verify_lemma_d");
  if (nsyl > 10000000)
    throw budget_error("verify_lemma_d: more than 10^7 Sylow subgroups");
  if (!S.order_fits_u64() || S.order_u64() > (1ull << 20))
    throw budget_error("verify_lemma_d: |P| too large to enumerate");

  const uint64_t N = S.order_u64();
  std::vector<uint64_t> pset(N);
  std::vector<Permutation> pelems(N);
  for (uint64_t i = 0; i < N; ++i) {
    pelems[i] = element_by_index(S, i);
    pset[i] = pack(pelems[i]);
  }
  std::sort(pset.begin(), pset.end());

  // all Sylow subgroups as conjugates P^t, t over S_n, deduplicated by
  // their sorted element sets
  std::set<std::vector<uint64_t>> sylows;
  std::vector<uint16_t> t(n);
  for (int i = 0; i < n; ++i) t[i] = static_cast<uint16_t>(i);
  std::vector<uint64_t> qset(N);
  do {
    Permutation tp{std::vector<uint16_t>(t.begin(), t.end())};
    Permutation tinv = inverse(tp);
    std::vector<uint16_t> conj(n);
    for (uint64_t i = 0; i < N; ++i) {
      const Permutation& h = pelems[i];
      for (int q = 0; q < n; ++q) conj[q] = tinv.img[h.img[tp.img[q]]];
      uint64_t code = 0;
      for (int q = 0; q < n; ++q) code = (code << 4) | conj[q];
      qset[i] = code;
    }
    std::sort(qset.begin(), qset.end());
    sylows.insert(qset);
  } while (std::next_permutation(t.begin(), t.end()));

  LemmaDReport rep;
  rep.n = n;
  rep.p = p;
  rep.sylow_count = static_cast<long>(sylows.size());
  rep.d.assign(m + 1, 0);
  if (BigInt(static_cast<long>(sylows.size())) != nsyl) {
    rep.failures.push_back("Sylow count differs from n!/|N|");
  }
  for (const auto& q : sylows) {
    std::vector<uint64_t> inter;
    std::set_intersection(pset.begin(), pset.end(), q.begin(), q.end(),
                          std::back_inserter(inter));
    uint64_t isz = inter.size();
    uint64_t idx = N / isz;  // |P : P∩Q|
    int k = 0;
    while (idx % p == 0) {
      idx /= p;
      ++k;
    }
    if (idx != 1) {
      rep.failures.push_back("|P:P∩Q| not a power of p");
      continue;
    }
    rep.d[k] += 1;
  }
  // identity against the exhaustive census, and p^k | d(p^k)
  CensusTable census = census_exhaustive(n, p);
  for (int k = 0; k <= m; ++k) {
    const BigInt pk = big_pow(p, k);
    if (rep.d[k] % pk != 0) {
      std::ostringstream msg;
      msg << "p^k does not divide d(p^k) at k=" << k;
      rep.failures.push_back(msg.str());
      continue;
    }
    const BigInt predicted = (rep.d[k] / pk) * nidx;
    if (predicted != census.counts[k]) {
      std::ostringstream msg;
      msg << "counts[" << k << "] = " << census.counts[k].str()
          << " but d(p^k)/p^k * |N:P| = " << predicted.str();
      rep.failures.push_back(msg.str());
    }
  }
  rep.pass = rep.failures.empty();
  return rep;
}

BigInt double_coset_size(const SylowStructure& S, const Permutation& x) {
  const BigInt inter = intersection_order_exact(S, x);
  return exact_div(big_pow(S.p(), 2 * S.order_exponent), inter,
                   "double_coset_size");
}

Permutation double_coset_canonical(const SylowStructure& S,
                                   const StabilizerChain& chain,
                                   const Permutation& x) {
  Permutation start = canonical_coset_rep(chain, x);
  // closure of the left coset under left multiplication by P's generators;
  // the minimum over the orbit is the least element of PxP
  std::set<Permutation> orbit = {start};
  std::vector<Permutation> frontier = {start};
  Permutation best = start;
  while (!frontier.empty()) {
    Permutation cur = std::move(frontier.back());
    frontier.pop_back();
    for (const Permutation& h : S.generators) {
      Permutation nb = canonical_coset_rep(chain, compose(h, cur));
      if (orbit.insert(nb).second) {
        if (nb < best) best = nb;
        frontier.push_back(nb);
      }
    }
  }
  return best;
}

}  // namespace dcos
