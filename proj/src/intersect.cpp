#include "dcos/intersect.hpp"

#include <algorithm>
#include <stdexcept>

#include "dcos/errors.hpp"

namespace dcos {

namespace {

// Backtrack over the images of 1..n for a common element of P and P^x.
//
// An element of P is the choice of one shift digit per wreath node; the
// image of any point is read off the digits along its root-to-leaf path.
// The search therefore tracks, per side, the digits fixed so far: fixing
// g(t) = gamma fixes the digits of P along t's path and (through
// h = x g x^-1, which must lie in P) the digits of the second copy along
// x(t)'s path. The candidate images of the next point are an aligned block
// interval per side, read in O(height); a branch commits O(height) digits.
struct Searcher {
  const SylowStructure& S;
  int n, p, maxh;
  std::vector<int> pw;               // p^0..p^maxh
  std::vector<int> theight;          // tree height per point
  std::vector<int> toffset;          // tree offset per point
  // digit[l-1][q / p^l] in [0,p), or -1 when free; one table per side
  std::vector<std::vector<int8_t>> digitP, digitQ;

  Permutation x, xinv;
  std::vector<uint16_t> gimg;

  struct Undo {
    int8_t side;   // 0 = P, 1 = Q
    int8_t level;  // 1-based
    int32_t node;
  };
  std::vector<Undo> trail;
  uint64_t nodes = 0;
  uint64_t node_budget = 200000000ull;
  std::vector<uint16_t> result;

  explicit Searcher(const SylowStructure& S_) : S(S_), n(S_.n()), p(S_.p()) {
    maxh = 0;
    for (const auto& t : S.trees) maxh = std::max(maxh, t.height);
    pw.assign(maxh + 1, 1);
    for (int l = 1; l <= maxh; ++l) pw[l] = pw[l - 1] * p;
    theight.assign(n, 0);
    toffset.assign(n, 0);
    for (const auto& t : S.trees)
      for (int q = t.offset; q < t.offset + t.width; ++q) {
        theight[q] = t.height;
        toffset[q] = t.offset;
      }
    digitP.assign(maxh, {});
    digitQ.assign(maxh, {});
    for (int l = 1; l <= maxh; ++l) {
      digitP[l - 1].assign((n + pw[l] - 1) / pw[l], -1);
      digitQ[l - 1].assign((n + pw[l] - 1) / pw[l], -1);
    }
    gimg.assign(n, 0);
  }

  void set_x(const Permutation& x_) {
    if (x_.degree() != n)
      throw std::invalid_argument("intersection: degree mismatch");
    x = x_;
    xinv = inverse(x_);
  }

  size_t mark() const { return trail.size(); }
  void rollback(size_t m) {
    while (trail.size() > m) {
      const Undo& e = trail.back();
      (e.side ? digitQ : digitP)[e.level - 1][e.node] = -1;
      trail.pop_back();
    }
  }

  // image interval of point t under elements compatible with the fixed
  // digits: walk down from the tree root to the first free digit
  void interval(const std::vector<std::vector<int8_t>>& digit, int t,
                int& start, int& size) const {
    int base = toffset[t];
    for (int l = theight[t]; l >= 1; --l) {
      const int8_t d = digit[l - 1][t / pw[l]];
      if (d < 0) {
        start = base;
        size = pw[l];
        return;
      }
      const int s = (t / pw[l - 1]) % p;
      base += ((s + d) % p) * pw[l - 1];
    }
    start = base;
    size = 1;
  }

  // fix the digits along t's path so that the image of t is gamma
  void commit(std::vector<std::vector<int8_t>>& digit, int8_t side, int t,
              int gamma) {
    for (int l = theight[t]; l >= 1; --l) {
      const int32_t node = t / pw[l];
      if (digit[l - 1][node] >= 0) continue;
      const int s = (t / pw[l - 1]) % p;
      const int s2 = (gamma / pw[l - 1]) % p;
      digit[l - 1][node] = static_cast<int8_t>(((s2 - s) % p + p) % p);
      trail.push_back({side, static_cast<int8_t>(l), node});
    }
  }

  void choose(int t, int gamma) {
    commit(digitP, 0, t, gamma);
    commit(digitQ, 1, x.img[t], x.img[gamma]);
    gimg[t] = static_cast<uint16_t>(gamma);
  }

  // DFS over images of t..n-1; at depth move_at the image must differ from
  // the point, and at depth t0 a nonnegative forced_gamma pins the image
  bool dfs(int t, int move_at, int forced_gamma, int t0) {
    if (t == n) {
      result.assign(gimg.begin(), gimg.end());
      return true;
    }
    if (++nodes > node_budget)
      throw budget_error("intersection backtrack: node budget exceeded");
    int s1, L1, s2, L2;
    interval(digitP, t, s1, L1);
    interval(digitQ, x.img[t], s2, L2);
    if (L1 == 1 && L2 == 1) {
      const int gamma = s1;
      if (x.img[gamma] != s2) return false;
      if (t == move_at && gamma == t) return false;
      if (t == t0 && forced_gamma >= 0 && gamma != forced_gamma) return false;
      const size_t m = mark();
      choose(t, gamma);
      const bool ok = dfs(t + 1, move_at, forced_gamma, t0);
      rollback(m);
      return ok;
    }
    const bool iter_p = L1 <= L2;
    const int count = iter_p ? L1 : L2;
    for (int i = 0; i < count; ++i) {
      int gamma;
      if (iter_p) {
        gamma = s1 + i;
        const int q2 = x.img[gamma];
        if (q2 < s2 || q2 >= s2 + L2) continue;
      } else {
        gamma = xinv.img[s2 + i];
        if (gamma < s1 || gamma >= s1 + L1) continue;
      }
      if (t == move_at && gamma == t) continue;
      if (t == t0 && forced_gamma >= 0 && gamma != forced_gamma) continue;
      const size_t m = mark();
      choose(t, gamma);
      if (dfs(t + 1, move_at, forced_gamma, t0)) {
        rollback(m);
        return true;
      }
      rollback(m);
    }
    return false;
  }

  // fix the prefix point t to the identity on both sides
  void pin_identity(int t) {
    commit(digitP, 0, t, t);
    commit(digitQ, 1, x.img[t], x.img[t]);
    gimg[t] = static_cast<uint16_t>(t);
  }

  bool nontrivial() {
    const size_t m0 = mark();
    bool found = false;
    for (int b = 0; b < n && !found; ++b) {
      if (dfs(b, /*move_at=*/b, /*forced_gamma=*/-1, /*t0=*/b)) found = true;
      else pin_identity(b);
    }
    rollback(m0);
    return found;
  }

  IntersectionChain chain() {
    IntersectionChain out;
    out.n = n;
    out.order = 1;
    const size_t m0 = mark();
    std::vector<Permutation> gens;
    std::vector<size_t> marks;  // trail size just before pinning each prefix point
    marks.reserve(n);
    for (int t = 0; t + 1 < n; ++t) {
      marks.push_back(mark());
      pin_identity(t);
    }
    std::vector<IntersectionChain::Level> levels_desc;
    for (int b = n - 1; b >= 0; --b) {
      IntersectionChain::Level lv;
      lv.base = b;
      lv.orbit = {b};
      lv.transversal = {Permutation::identity(n)};
      std::vector<char> inorb(n, 0);
      inorb[b] = 1;
      auto close_orbit = [&]() {
        for (size_t head = 0; head < lv.orbit.size(); ++head) {
          for (const auto& g : gens) {
            const int im = g.img[lv.orbit[head]];
            if (!inorb[im]) {
              inorb[im] = 1;
              lv.orbit.push_back(im);
              lv.transversal.push_back(compose(g, lv.transversal[head]));
            }
          }
        }
      };
      close_orbit();
      int s1, L1, s2, L2;
      interval(digitP, b, s1, L1);
      interval(digitQ, x.img[b], s2, L2);
      const bool iter_p = L1 <= L2;
      const int count = iter_p ? L1 : L2;
      for (int i = 0; i < count; ++i) {
        int gamma;
        if (iter_p) {
          gamma = s1 + i;
          const int q2 = x.img[gamma];
          if (q2 < s2 || q2 >= s2 + L2) continue;
        } else {
          gamma = xinv.img[s2 + i];
          if (gamma < s1 || gamma >= s1 + L1) continue;
        }
        if (inorb[gamma]) continue;
        if (dfs(b, /*move_at=*/-1, /*forced_gamma=*/gamma, /*t0=*/b)) {
          gens.push_back(Permutation(
              std::vector<uint16_t>(result.begin(), result.end())));
          close_orbit();
        }
      }
      out.order *= static_cast<long>(lv.orbit.size());
      if (lv.orbit.size() > 1) levels_desc.push_back(std::move(lv));
      if (b > 0) rollback(marks[b - 1]);
    }
    rollback(m0);
    out.levels.assign(levels_desc.rbegin(), levels_desc.rend());
    return out;
  }
};

}  // namespace

bool intersection_nontrivial(const SylowStructure& S, const Permutation& x) {
  if (S.order_exponent == 0) {
    if (x.degree() != S.n())
      throw std::invalid_argument("intersection: degree mismatch");
    return false;
  }
  Searcher se(S);
  se.set_x(x);
  return se.nontrivial();
}

IntersectionChain intersection_chain(const SylowStructure& S,
                                     const Permutation& x) {
  Searcher se(S);
  se.set_x(x);
  return se.chain();
}

BigInt intersection_order_exact(const SylowStructure& S,
                                const Permutation& x) {
  return intersection_chain(S, x).order;
}

Permutation random_intersection_element(const IntersectionChain& chain,
                                        CounterRng& rng) {
  Permutation g = Permutation::identity(chain.n);
  for (const auto& lv : chain.levels) {
    const uint64_t pick = rng.next_below(lv.orbit.size());
    if (pick) g = compose(g, lv.transversal[pick]);
  }
  return g;
}

}  // namespace dcos
