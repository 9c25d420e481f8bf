#include "dcos/prob.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "dcos/intersect.hpp"

namespace dcos {

void wilson_interval(uint64_t hits, uint64_t samples, double& lo, double& hi) {
  if (samples == 0) {
    lo = 0.0;
    hi = 1.0;
    return;
  }
  if (hits == 0) {
    const double z = 1.959963984540054;
    lo = 0.0;
    hi = (z * z) / (samples + z * z);
    return;
  }
  if (hits == samples) {
    const double z = 1.959963984540054;
    lo = samples / (samples + z * z);
    hi = 1.0;
    return;
  }
  const double z = 1.959963984540054;
  const double nn = static_cast<double>(samples);
  const double ph = static_cast<double>(hits) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (ph + z2 / (2.0 * nn)) / denom;
  const double half =
      z * std::sqrt(ph * (1.0 - ph) / nn + z2 / (4.0 * nn * nn)) / denom;
  lo = std::max(0.0, center - half);
  hi = std::min(1.0, center + half);
}

namespace {

// deterministic parallel Bernoulli counting: sample i uses stream i
template <class Pred>
uint64_t count_hits(uint64_t samples, int threads, Pred&& pred) {
  if (threads < 1) threads = 1;
  if (threads == 1) {
    uint64_t h = 0;
    for (uint64_t i = 0; i < samples; ++i)
      if (pred(i)) ++h;
    return h;
  }
  std::vector<uint64_t> part(threads, 0);
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    const uint64_t lo = samples * t / threads;
    const uint64_t hi = samples * (t + 1) / threads;
    pool.emplace_back([&, lo, hi, t]() {
      uint64_t h = 0;
      for (uint64_t i = lo; i < hi; ++i)
        if (pred(i)) ++h;
      part[t] = h;
    });
  }
  for (auto& th : pool) th.join();
  return std::accumulate(part.begin(), part.end(), uint64_t{0});
}

EstimateReport finish_report(int n, int p, uint64_t samples, uint64_t seed,
                             uint64_t hits, double elapsed) {
  EstimateReport r;
  r.n = n;
  r.p = p;
  r.samples = samples;
  r.seed = seed;
  r.hits = hits;
  r.p_hat = samples ? static_cast<double>(hits) / samples : 0.0;
  wilson_interval(hits, samples, r.ci_lo, r.ci_hi);
  r.elapsed_sec = elapsed;
  return r;
}

}  // namespace

EstimateReport estimate_f(int n, int p, uint64_t samples, uint64_t seed,
                          int threads) {
  SylowStructure S = build_sylow(n, p);
  const auto t0 = std::chrono::steady_clock::now();
  const uint64_t hits = count_hits(samples, threads, [&](uint64_t i) {
    CounterRng rng(seed, i);
    Permutation x = random_uniform(n, rng);
    return intersection_nontrivial(S, x);
  });
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return finish_report(n, p, samples, seed, hits, elapsed);
}

BigInt exact_f_count(int n, int p) {
  SylowStructure S = build_sylow(n, p);
  std::vector<uint16_t> t(n);
  for (int i = 0; i < n; ++i) t[i] = static_cast<uint16_t>(i);
  BigInt cnt = 0;
  do {
    Permutation x{std::vector<uint16_t>(t.begin(), t.end())};
    if (intersection_nontrivial(S, x)) ++cnt;
  } while (std::next_permutation(t.begin(), t.end()));
  return cnt;
}

ModelEquivalenceReport check_model_equivalence(int n, int p, uint64_t samples,
                                               uint64_t seed, int threads) {
  SylowStructure S = build_sylow(n, p);
  ModelEquivalenceReport rep;
  rep.direct = estimate_f(n, p, samples, seed, threads);
  const auto t0 = std::chrono::steady_clock::now();
  const uint64_t hits = count_hits(samples, threads, [&](uint64_t i) {
    CounterRng rng(seed ^ 0x5eedf00dULL, i);
    Permutation x = random_uniform(n, rng);
    Permutation u = random_normalizer_element(S, rng);
    return intersection_nontrivial(S, compose(u, x));
  });
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  rep.via_normalizer =
      finish_report(n, p, samples, seed ^ 0x5eedf00dULL, hits, elapsed);
  rep.intervals_overlap = rep.direct.ci_lo <= rep.via_normalizer.ci_hi &&
                          rep.via_normalizer.ci_lo <= rep.direct.ci_hi;
  return rep;
}

int matching_count(const Permutation& g) {
  const int n = g.degree();
  if (n % 2 != 0) throw std::invalid_argument("matching_count: n must be even");
  int w = 0;
  for (int b = 0; b < n; b += 2)
    if (g.img[b] / 2 == g.img[b + 1] / 2) ++w;
  return w;
}

std::vector<uint64_t> matching_histogram(int n, uint64_t samples,
                                         uint64_t seed, int threads) {
  if (n % 2 != 0)
    throw std::invalid_argument("matching_histogram: n must be even");
  if (threads < 1) threads = 1;
  const int bins = n / 2 + 1;
  auto run_range = [&](uint64_t lo, uint64_t hi, std::vector<uint64_t>& hist) {
    hist.assign(bins, 0);
    for (uint64_t i = lo; i < hi; ++i) {
      CounterRng rng(seed, i);
      ++hist[matching_count(random_uniform(n, rng))];
    }
  };
  if (threads == 1) {
    std::vector<uint64_t> hist;
    run_range(0, samples, hist);
    return hist;
  }
  std::vector<std::vector<uint64_t>> parts(threads);
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    const uint64_t lo = samples * t / threads;
    const uint64_t hi = samples * (t + 1) / threads;
    pool.emplace_back(run_range, lo, hi, std::ref(parts[t]));
  }
  for (auto& th : pool) th.join();
  std::vector<uint64_t> hist(bins, 0);
  for (const auto& part : parts)
    for (int b = 0; b < bins; ++b) hist[b] += part[b];
  return hist;
}

EstimateReport estimate_w_positive(int n, uint64_t samples, uint64_t seed,
                                   int threads) {
  if (n % 2 != 0)
    throw std::invalid_argument("estimate_w_positive: n must be even");
  const auto t0 = std::chrono::steady_clock::now();
  const uint64_t hits = count_hits(samples, threads, [&](uint64_t i) {
    CounterRng rng(seed, i);
    return matching_count(random_uniform(n, rng)) > 0;
  });
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return finish_report(n, 2, samples, seed, hits, elapsed);
}

Permutation random_centralizer_element(const Permutation& h, CounterRng& rng) {
  const int n = h.degree();
  // cycles grouped by length, each listed from its least point
  std::vector<std::vector<std::vector<int>>> by_len(n + 1);
  std::vector<char> seen(n, 0);
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::vector<int> cyc;
    for (int j = i; !seen[j]; j = h.img[j]) {
      seen[j] = 1;
      cyc.push_back(j);
    }
    by_len[cyc.size()].push_back(std::move(cyc));
  }
  Permutation c = Permutation::identity(n);
  for (int len = 1; len <= n; ++len) {
    auto& cycles = by_len[len];
    if (cycles.empty()) continue;
    const int t = static_cast<int>(cycles.size());
    std::vector<int> pi(t);
    for (int i = 0; i < t; ++i) pi[i] = i;
    for (int i = t - 1; i > 0; --i)
      std::swap(pi[i], pi[rng.next_below(static_cast<uint64_t>(i) + 1)]);
    for (int i = 0; i < t; ++i) {
      const uint64_t rot = rng.next_below(static_cast<uint64_t>(len));
      const auto& from = cycles[i];
      const auto& to = cycles[pi[i]];
      for (int j = 0; j < len; ++j)
        c.img[from[j]] =
            static_cast<uint16_t>(to[(j + static_cast<int>(rot)) % len]);
    }
  }
  return c;
}

Permutation burnside_step(const SylowStructure& S, const Permutation& x,
                          CounterRng& rng) {
  // stabilizer of x under (h,k)g = hgk^-1 projects to P ∩ xPx^-1
  IntersectionChain chain = intersection_chain(S, inverse(x));
  Permutation h = random_intersection_element(chain, rng);
  Permutation c = random_centralizer_element(h, rng);
  return compose(c, x);
}

namespace {

std::vector<int> orbit_of(int start, const std::vector<Permutation>& gens,
                          int n) {
  std::vector<int> orbit = {start};
  std::vector<char> in(n, 0);
  in[start] = 1;
  for (size_t head = 0; head < orbit.size(); ++head)
    for (const auto& g : gens) {
      const int im = g.img[orbit[head]];
      if (!in[im]) {
        in[im] = 1;
        orbit.push_back(im);
      }
    }
  return orbit;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

// size of the minimal block containing {0, beta}
int minimal_block_size(const std::vector<Permutation>& gens, int n, int beta) {
  UnionFind uf(n);
  std::vector<std::pair<int, int>> queue;
  uf.unite(0, beta);
  queue.emplace_back(0, beta);
  while (!queue.empty()) {
    auto [a, b] = queue.back();
    queue.pop_back();
    for (const auto& g : gens)
      if (uf.unite(g.img[a], g.img[b])) queue.emplace_back(g.img[a], g.img[b]);
  }
  int size = 0;
  const int root = uf.find(0);
  for (int q = 0; q < n; ++q)
    if (uf.find(q) == root) ++size;
  return size;
}

}  // namespace

GiantResult giant_test(const std::vector<Permutation>& gens, CounterRng& rng,
                       int rounds) {
  if (gens.empty()) return GiantResult::NotGiant;
  const int n = gens[0].degree();
  for (const auto& g : gens)
    if (g.degree() != n) throw std::invalid_argument("giant_test: degrees");
  if (static_cast<int>(orbit_of(0, gens, n).size()) != n)
    return GiantResult::NotGiant;
  for (int beta = 1; beta < n; ++beta) {
    const int bs = minimal_block_size(gens, n, beta);
    if (bs < n) return GiantResult::NotGiant;  // proper block system
  }
  // transitive and primitive; look for a prime cycle certificate
  for (int round = 0; round < rounds; ++round) {
    Permutation e = Permutation::identity(n);
    const int len = 24 + n / 4;
    for (int s = 0; s < len; ++s)
      e = compose(e, gens[rng.next_below(gens.size())]);
    CycleType ct = cycle_type(e);
    for (const auto& [q, cnt] : ct.mult) {
      if (cnt != 1 || !is_prime(q)) continue;
      if (2 * q <= n || q >= n - 2) continue;
      Permutation y = e;
      for (const auto& [l, c2] : ct.mult) {
        (void)c2;
        if (l == q || l == 1) continue;
        Permutation acc = Permutation::identity(n);
        for (int s = 0; s < l; ++s) acc = compose(acc, y);
        y = std::move(acc);
      }
      CycleType yct = cycle_type(y);
      auto it = yct.mult.find(q);
      const bool single_prime_cycle =
          it != yct.mult.end() && it->second == 1 &&
          (yct.mult.size() == 2 || (yct.mult.size() == 1 && q == n));
      if (single_prime_cycle &&
          (yct.mult.count(1) == 0 || yct.mult.at(1) == n - q)) {
        return GiantResult::Giant;  // Jordan: primitive + q-cycle, q <= n-3
      }
    }
  }
  return GiantResult::Unknown;
}

double poisson_pmf(double lambda, int k) {
  double logp = -lambda + k * std::log(lambda);
  for (int i = 2; i <= k; ++i) logp -= std::log(static_cast<double>(i));
  return std::exp(logp);
}

double chi_square_quantile_99(int df) {
  // Wilson-Hilferty approximation
  const double z = 2.3263478740408408;  // Phi^-1(0.99)
  const double a = 2.0 / (9.0 * df);
  const double c = 1.0 - a + z * std::sqrt(a);
  return df * c * c * c;
}

}  // namespace dcos
