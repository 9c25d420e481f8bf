#include "dcos/sylow.hpp"

#include <algorithm>
#include <stdexcept>

#include "dcos/errors.hpp"

namespace dcos {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; static_cast<long>(d) * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

PAdicProfile profile(int n, int p) {
  if (!is_prime(p)) throw std::invalid_argument("profile: p is not prime");
  if (n < 1) throw std::invalid_argument("profile: n >= 1 required");
  PAdicProfile pr;
  pr.n = n;
  pr.p = p;
  for (int r = n; r > 0; r /= p) pr.digits.push_back(r % p);
  for (int d : pr.digits) pr.digit_sum += d;
  // Legendre, both forms
  int m1 = 0;
  for (long q = p; q <= n; q *= p) m1 += n / static_cast<int>(q);
  int m2 = (n - pr.digit_sum) / (p - 1);
  if (m1 != m2 || (n - pr.digit_sum) % (p - 1) != 0)
    throw std::logic_error("profile: Legendre evaluations disagree");
  pr.m = m1;
  return pr;
}

BigInt normalizer_index(const PAdicProfile& pr) {
  BigInt r = 1;
  for (size_t i = 0; i < pr.digits.size(); ++i) {
    r *= big_pow(pr.p - 1, i * static_cast<unsigned long>(pr.digits[i]));
    r *= big_factorial(pr.digits[i]);
  }
  return r;
}

bool SylowStructure::order_fits_u64() const {
  // p^m < 2^63
  BigInt o = big_pow(prof.p, order_exponent);
  return o < (BigInt(1) << 63);
}

uint64_t SylowStructure::order_u64() const {
  if (!order_fits_u64())
    throw budget_error("Sylow order exceeds 64-bit range");
  uint64_t o = 1;
  for (int i = 0; i < order_exponent; ++i) o *= static_cast<uint64_t>(prof.p);
  return o;
}

namespace {

// p^0..p^j as ints (block widths stay <= n)
std::vector<int> power_table(int p, int maxh) {
  std::vector<int> pw(maxh + 1, 1);
  for (int i = 1; i <= maxh; ++i) pw[i] = pw[i - 1] * p;
  return pw;
}

}  // namespace

SylowStructure build_sylow(int n, int p) {
  SylowStructure S;
  S.prof = profile(n, p);
  const auto& digits = S.prof.digits;
  int off = 0;
  for (int j = static_cast<int>(digits.size()) - 1; j >= 0; --j) {
    for (int c = 0; c < digits[j]; ++c) {
      TreeBlock t;
      t.height = j;
      t.offset = off;
      t.width = 1;
      for (int i = 0; i < j; ++i) t.width *= p;
      off += t.width;
      S.trees.push_back(t);
    }
  }
  S.order_exponent = S.prof.m;
  S.tree_of_point.assign(n, -1);
  for (size_t t = 0; t < S.trees.size(); ++t)
    for (int q = S.trees[t].offset; q < S.trees[t].offset + S.trees[t].width;
         ++q)
      S.tree_of_point[q] = static_cast<int>(t);

  // node generators: per tree, levels from the root down, blocks left to
  // right; the node at level l on [b, b+p^l) adds p^(l-1) within the block
  for (const TreeBlock& t : S.trees) {
    auto pw = power_table(p, t.height);
    for (int l = t.height; l >= 1; --l) {
      for (int b = t.offset; b < t.offset + t.width; b += pw[l]) {
        Permutation g = Permutation::identity(n);
        for (int q = 0; q < pw[l]; ++q)
          g.img[b + q] = static_cast<uint16_t>(b + (q + pw[l - 1]) % pw[l]);
        S.generators.push_back(std::move(g));
      }
    }
  }
  return S;
}

namespace {

// verifies that q -> g(q) - shift is a member of the height-j wreath group
// on the aligned block [off, off+p^j)
bool check_block(const Permutation& g, int p, const std::vector<int>& pw,
                 int off, int j, int shift) {
  if (j == 0) return static_cast<int>(g.img[off]) - shift == off;
  const int w = pw[j - 1];
  const long rel = static_cast<long>(g.img[off]) - shift - off;
  if (rel < 0 || rel >= pw[j]) return false;
  const int t = static_cast<int>(rel) / w;
  for (int s = 0; s < p; ++s) {
    const int ts = (s + t) % p;
    if (!check_block(g, p, pw, off + s * w, j - 1, shift + (ts - s) * w))
      return false;
  }
  return true;
}

}  // namespace

bool contains(const SylowStructure& S, const Permutation& g) {
  if (g.degree() != S.n())
    throw std::invalid_argument("contains: degree mismatch");
  for (const TreeBlock& t : S.trees) {
    if (t.height == 0) {
      if (g.img[t.offset] != t.offset) return false;
      continue;
    }
    auto pw = power_table(S.p(), t.height);
    if (!check_block(g, S.p(), pw, t.offset, t.height, 0)) return false;
  }
  return true;
}

namespace {

// orders of sub-blocks by height as u64 (valid under the p^m < 2^63 guard)
std::vector<uint64_t> block_orders(int p, int maxh) {
  std::vector<uint64_t> bo(maxh + 1, 1);
  for (int j = 1; j <= maxh; ++j) {
    uint64_t b = bo[j - 1];
    uint64_t bp = 1;
    for (int s = 0; s < p; ++s) bp *= b;
    bo[j] = bp * static_cast<uint64_t>(p);
  }
  return bo;
}

void decode_block(int p, const std::vector<int>& pw,
                  const std::vector<uint64_t>& bo, int off, int j,
                  uint64_t idx, std::vector<uint16_t>& img,
                  std::vector<uint16_t>& tmp) {
  if (j == 0) {
    img[off] = static_cast<uint16_t>(off);
    return;
  }
  const int w = pw[j - 1];
  uint64_t bp = 1;
  for (int s = 0; s < p; ++s) bp *= bo[j - 1];
  const uint64_t t = idx / bp;
  uint64_t rest = idx % bp;
  std::vector<uint64_t> ci(p);
  for (int s = p - 1; s >= 0; --s) {
    ci[s] = rest % bo[j - 1];
    rest /= bo[j - 1];
  }
  for (int s = 0; s < p; ++s)
    decode_block(p, pw, bo, off + s * w, j - 1, ci[s], img, tmp);
  if (t) {
    // w(q) = base(sigma^t(q)); img currently holds base
    const int width = pw[j];
    for (int q = 0; q < width; ++q) tmp[q] = img[off + q];
    for (int q = 0; q < width; ++q)
      img[off + q] = tmp[(q + static_cast<int>(t) * w) % width];
  }
}

uint64_t encode_block(int p, const std::vector<int>& pw,
                      const std::vector<uint64_t>& bo, int off, int j,
                      const uint16_t* imgs) {
  // imgs[r] = image of point off+r, absolute
  if (j == 0) {
    if (imgs[0] != off)
      throw std::invalid_argument("index_of: not a member of P");
    return 0;
  }
  const int w = pw[j - 1];
  const long rel = static_cast<long>(imgs[0]) - off;
  if (rel < 0 || rel >= pw[j])
    throw std::invalid_argument("index_of: not a member of P");
  const int t = static_cast<int>(rel) / w;
  uint64_t idx = static_cast<uint64_t>(t);
  std::vector<uint16_t> comp(w);
  for (int s = 0; s < p; ++s) {
    const int src = ((s - t) % p + p) % p;
    for (int r = 0; r < w; ++r) {
      comp[r] = imgs[src * w + r];
      if (comp[r] < off + s * w || comp[r] >= off + (s + 1) * w)
        throw std::invalid_argument("index_of: not a member of P");
    }
    idx = idx * bo[j - 1] + encode_block(p, pw, bo, off + s * w, j - 1,
                                         comp.data());
  }
  return idx;
}

}  // namespace

Permutation element_by_index(const SylowStructure& S, uint64_t idx) {
  if (!S.order_fits_u64())
    throw budget_error("element_by_index: p^m exceeds 64-bit range");
  if (idx >= S.order_u64())
    throw std::out_of_range("element_by_index: index out of range");
  const int n = S.n();
  const int p = S.p();
  std::vector<uint16_t> img(n);
  std::vector<uint16_t> tmp(n);
  // first tree carries the most significant digits
  std::vector<uint64_t> tidx(S.trees.size());
  for (size_t t = S.trees.size(); t-- > 0;) {
    auto bo = block_orders(p, S.trees[t].height);
    uint64_t to = bo[S.trees[t].height];
    tidx[t] = idx % to;
    idx /= to;
  }
  for (size_t t = 0; t < S.trees.size(); ++t) {
    auto pw = power_table(p, S.trees[t].height);
    auto bo = block_orders(p, S.trees[t].height);
    decode_block(p, pw, bo, S.trees[t].offset, S.trees[t].height, tidx[t], img,
                 tmp);
  }
  return Permutation(std::move(img));
}

uint64_t index_of(const SylowStructure& S, const Permutation& g) {
  if (!S.order_fits_u64())
    throw budget_error("index_of: p^m exceeds 64-bit range");
  if (g.degree() != S.n())
    throw std::invalid_argument("index_of: degree mismatch");
  const int p = S.p();
  uint64_t idx = 0;
  for (const TreeBlock& t : S.trees) {
    auto pw = power_table(p, t.height);
    auto bo = block_orders(p, t.height);
    idx = idx * bo[t.height] +
          encode_block(p, pw, bo, t.offset, t.height, g.img.data() + t.offset);
  }
  return idx;
}

Permutation central_element(const SylowStructure& S) {
  if (S.n() < S.p())
    throw std::invalid_argument("central_element: P is trivial for n < p");
  const int p = S.p();
  Permutation z = Permutation::identity(S.n());
  for (const TreeBlock& t : S.trees) {
    if (t.height == 0) continue;
    for (int b = t.offset; b < t.offset + t.width; b += p)
      for (int q = 0; q < p; ++q)
        z.img[b + q] = static_cast<uint16_t>(b + (q + 1) % p);
  }
  return z;
}

BigInt intersection_order(const SylowStructure& S, const Permutation& x) {
  if (x.degree() != S.n())
    throw std::invalid_argument("intersection_order: degree mismatch");
  if (S.order_exponent == 0) return 1;
  if (!S.order_fits_u64() || S.order_u64() > (1ull << 26))
    throw budget_error(
        "intersection_order: refusing full enumeration, |P| > 2^26");
  const Permutation xinv = inverse(x);
  const uint64_t N = S.order_u64();
  uint64_t cnt = 0;
  for (uint64_t i = 0; i < N; ++i) {
    Permutation h = element_by_index(S, i);
    if (contains(S, conjugate(h, xinv))) ++cnt;  // x h x^-1 ∈ P
  }
  // sanity: the intersection is a subgroup of P, so a power of p
  uint64_t c = cnt;
  while (c % S.p() == 0) c /= S.p();
  if (c != 1) throw std::logic_error("intersection_order: not a power of p");
  return BigInt(cnt);
}

namespace {

void random_block(int p, const std::vector<int>& pw, int off, int j,
                  CounterRng& rng, std::vector<uint16_t>& img,
                  std::vector<uint16_t>& tmp) {
  if (j == 0) {
    img[off] = static_cast<uint16_t>(off);
    return;
  }
  const int w = pw[j - 1];
  for (int s = 0; s < p; ++s) random_block(p, pw, off + s * w, j - 1, rng, img, tmp);
  const int t = static_cast<int>(rng.next_below(static_cast<uint64_t>(p)));
  if (t) {
    const int width = pw[j];
    for (int q = 0; q < width; ++q) tmp[q] = img[off + q];
    for (int q = 0; q < width; ++q) img[off + q] = tmp[(q + t * w) % width];
  }
}

}  // namespace

Permutation random_normalizer_element(const SylowStructure& S,
                                      CounterRng& rng) {
  const int n = S.n();
  const int p = S.p();
  Permutation acc = Permutation::identity(n);
  std::vector<uint16_t> tmp(n);
  for (const TreeBlock& t : S.trees) {
    if (t.height == 0) continue;
    auto pw = power_table(p, t.height);
    // uniform element of the tree group
    std::vector<uint16_t> wim(n);
    for (int i = 0; i < n; ++i) wim[i] = static_cast<uint16_t>(i);
    random_block(p, pw, t.offset, t.height, rng, wim, tmp);
    // uniform torus element: scale digit l-1 by a uniform unit mod p
    Permutation torus = Permutation::identity(n);
    if (p > 2) {
      for (int l = 1; l <= t.height; ++l) {
        const int u =
            1 + static_cast<int>(rng.next_below(static_cast<uint64_t>(p - 1)));
        if (u == 1) continue;
        for (int q = 0; q < t.width; ++q) {
          const int d = (q / pw[l - 1]) % p;
          const int q2 = q + ((d * u) % p - d) * pw[l - 1];
          tmp[q2] = torus.img[t.offset + q];
        }
        for (int q = 0; q < t.width; ++q) torus.img[t.offset + q] = tmp[q];
      }
    }
    for (int q = 0; q < t.width; ++q) {
      const int a = t.offset + q;
      acc.img[a] = torus.img[wim[a]];
    }
  }
  // uniform order-preserving shuffle of same-height trees
  Permutation blow = Permutation::identity(n);
  size_t i = 0;
  while (i < S.trees.size()) {
    size_t j = i;
    while (j < S.trees.size() && S.trees[j].height == S.trees[i].height) ++j;
    const int cnt = static_cast<int>(j - i);
    if (cnt >= 2) {
      std::vector<int> pi(cnt);
      for (int s = 0; s < cnt; ++s) pi[s] = s;
      for (int s = cnt - 1; s > 0; --s)
        std::swap(pi[s], pi[rng.next_below(static_cast<uint64_t>(s) + 1)]);
      for (int s = 0; s < cnt; ++s) {
        const TreeBlock& from = S.trees[i + s];
        const TreeBlock& to = S.trees[i + pi[s]];
        for (int r = 0; r < from.width; ++r)
          blow.img[from.offset + r] = static_cast<uint16_t>(to.offset + r);
      }
    }
    i = j;
  }
  return compose(blow, acc);
}

}  // namespace dcos
