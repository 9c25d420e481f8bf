#include "dcos/chain.hpp"

#include <stdexcept>

namespace dcos {

BigInt StabilizerChain::order() const {
  BigInt o = 1;
  for (const auto& lv : levels) o *= static_cast<long>(lv.orbit.size());
  return o;
}

bool StabilizerChain::sift(const Permutation& g) const {
  Permutation r = g;
  for (const auto& lv : levels) {
    int beta = r.img[lv.base];
    int pos = lv.orbit_pos[beta];
    if (pos == 0) return false;
    r = compose(inverse(lv.transversal[pos - 1]), r);
  }
  return r.is_identity();
}

namespace {

struct Builder {
  int n;
  std::vector<Permutation> gens;          // all strong generators
  std::vector<int> first_moved;           // per generator
  std::vector<ChainLevel> levels;

  explicit Builder(int n_) : n(n_) {
    levels.resize(n);
    for (int i = 0; i < n; ++i) {
      levels[i].base = i;
      levels[i].orbit = {i};
      levels[i].orbit_pos.assign(n, 0);
      levels[i].orbit_pos[i] = 1;
      levels[i].transversal = {Permutation::identity(n)};
    }
  }

  static int fm(const Permutation& g) {
    for (int i = 0; i < g.degree(); ++i)
      if (g.img[i] != i) return i;
    return -1;
  }

  // rebuild the orbit/transversal at level i from generators fixing 0..i-1
  void recompute_orbit(int i) {
    ChainLevel& lv = levels[i];
    lv.orbit.assign(1, i);
    lv.orbit_pos.assign(n, 0);
    lv.orbit_pos[i] = 1;
    lv.transversal.assign(1, Permutation::identity(n));
    for (size_t head = 0; head < lv.orbit.size(); ++head) {
      int pt = lv.orbit[head];
      for (size_t gi = 0; gi < gens.size(); ++gi) {
        if (first_moved[gi] < i) continue;
        int im = gens[gi].img[pt];
        if (lv.orbit_pos[im] == 0) {
          lv.orbit_pos[im] = static_cast<int>(lv.orbit.size()) + 1;
          lv.orbit.push_back(im);
          lv.transversal.push_back(compose(gens[gi], lv.transversal[head]));
        }
      }
    }
  }

  // strip through levels from `from`; returns the residue
  Permutation strip(Permutation g, int from) const {
    for (int j = from; j < n; ++j) {
      int beta = g.img[levels[j].base];
      if (beta == levels[j].base) continue;
      int pos = levels[j].orbit_pos[beta];
      if (pos == 0) return g;  // cannot strip further
      g = compose(inverse(levels[j].transversal[pos - 1]), g);
    }
    return g;
  }

  void run(const std::vector<Permutation>& input) {
    for (const auto& g : input) {
      if (g.is_identity()) continue;
      gens.push_back(g);
      first_moved.push_back(fm(g));
    }
    // verify levels from the deepest used one upward; on any addition jump
    // back down to the new generator's level
    int i = n - 1;
    while (i >= 0) {
      recompute_orbit(i);
      bool added = false;
      ChainLevel& lv = levels[i];
      for (size_t oi = 0; oi < lv.orbit.size() && !added; ++oi) {
        for (size_t gi = 0; gi < gens.size() && !added; ++gi) {
          if (first_moved[gi] < i) continue;
          int pt = lv.orbit[oi];
          int im = gens[gi].img[pt];
          Permutation schreier =
              compose(inverse(lv.transversal[lv.orbit_pos[im] - 1]),
                      compose(gens[gi], lv.transversal[oi]));
          Permutation res = strip(std::move(schreier), i + 1);
          if (!res.is_identity()) {
            int j = fm(res);
            gens.push_back(std::move(res));
            first_moved.push_back(j);
            i = j;  // j > i by construction
            added = true;
          }
        }
      }
      if (!added) --i;
    }
  }
};

}  // namespace

StabilizerChain build_chain_from(const std::vector<Permutation>& gens, int n) {
  Builder b(n);
  b.run(gens);
  StabilizerChain c;
  c.n = n;
  c.levels = std::move(b.levels);
  c.strong_gens = std::move(b.gens);
  return c;
}

StabilizerChain build_chain(const SylowStructure& S) {
  StabilizerChain c = build_chain_from(S.generators, S.n());
  if (c.order() != S.order())
    throw std::logic_error("build_chain: order mismatch against p^m");
  return c;
}

Permutation canonical_coset_rep(const StabilizerChain& chain,
                                const Permutation& g) {
  if (g.degree() != chain.n)
    throw std::invalid_argument("canonical_coset_rep: degree mismatch");
  Permutation r = g;
  std::vector<uint16_t> scratch(chain.n);
  canonical_inplace(chain, r.img.data(), scratch.data());
  return r;
}

void canonical_inplace(const StabilizerChain& chain, uint16_t* img,
                       uint16_t* scratch) {
  const int n = chain.n;
  for (const auto& lv : chain.levels) {
    if (lv.orbit.size() == 1) continue;
    int best = lv.orbit[0];
    int bi = 0;
    for (size_t oi = 1; oi < lv.orbit.size(); ++oi) {
      if (img[lv.orbit[oi]] < img[best]) {
        best = lv.orbit[oi];
        bi = static_cast<int>(oi);
      }
    }
    if (best == lv.base) continue;
    const Permutation& u = lv.transversal[bi];
    for (int q = 0; q < n; ++q) scratch[q] = img[u.img[q]];
    for (int q = 0; q < n; ++q) img[q] = scratch[q];
  }
}

}  // namespace dcos
