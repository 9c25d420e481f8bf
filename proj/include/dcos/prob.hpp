#ifndef DCOS_PROB_HPP
#define DCOS_PROB_HPP

#include <cstdint>
#include <vector>

#include "dcos/bigint.hpp"
#include "dcos/perm.hpp"
#include "dcos/rng.hpp"
#include "dcos/sylow.hpp"

namespace dcos {

// Bernoulli estimate with a Wilson 95% interval. Sample i always draws from
// stream i of the seed, so the result is bit-identical for any thread count.
struct EstimateReport {
  int n = 0;
  int p = 0;
  uint64_t samples = 0;
  uint64_t seed = 0;
  uint64_t hits = 0;
  double p_hat = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double elapsed_sec = 0.0;  // informational only, never serialized
};

void wilson_interval(uint64_t hits, uint64_t samples, double& lo, double& hi);

// f(n,p): probability over uniform x that |P ∩ P^x| > 1
EstimateReport estimate_f(int n, int p, uint64_t samples, uint64_t seed,
                          int threads = 1);

// exact f by full scan over S_n (n small): numerator count of x with
// nontrivial intersection
BigInt exact_f_count(int n, int p);

// the same probability estimated under the uniform-Sylow model: x uniform
// followed by a uniform normalizer factor; must agree with estimate_f
struct ModelEquivalenceReport {
  EstimateReport direct;
  EstimateReport via_normalizer;
  bool intervals_overlap = false;
};

ModelEquivalenceReport check_model_equivalence(int n, int p, uint64_t samples,
                                               uint64_t seed, int threads = 1);

// number of blocks of the fixed matching {{1,2},{3,4},...} mapped to blocks
// of the same matching
int matching_count(const Permutation& g);

// histogram of W over uniform samples (index W = 0..n/2)
std::vector<uint64_t> matching_histogram(int n, uint64_t samples,
                                         uint64_t seed, int threads = 1);

EstimateReport estimate_w_positive(int n, uint64_t samples, uint64_t seed,
                                   int threads = 1);

// One step of the orbit-sampling chain for P x P acting by (h,k)g = hgk^-1:
// draw h uniform in the stabilizer projection P ∩ xPx^-1, set k = x^-1 h x,
// then draw x' uniform in C(h) x. Stationary distribution: uniform over
// double cosets.
Permutation burnside_step(const SylowStructure& S, const Permutation& x,
                          CounterRng& rng);

// uniform element of the centralizer of h: independent rotation of each
// cycle plus a uniform shuffle of same-length cycles
Permutation random_centralizer_element(const Permutation& h, CounterRng& rng);

enum class GiantResult { Giant, NotGiant, Unknown };

// one-sided recognition: "Giant" is certified (transitive + primitive +
// a power of a random element is a prime cycle fixing >= 3 points);
// "NotGiant" is certified (intransitive or a proper block system);
// otherwise Unknown after the given number of random elements.
GiantResult giant_test(const std::vector<Permutation>& gens, CounterRng& rng,
                       int rounds);

// test statistics helpers
double poisson_pmf(double lambda, int k);
double chi_square_quantile_99(int df);

}  // namespace dcos

#endif
