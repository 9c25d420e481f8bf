#include "dcos/perm.hpp"

#include <sstream>
#include <stdexcept>

namespace dcos {

Permutation Permutation::identity(int n) {
  std::vector<uint16_t> v(n);
  for (int i = 0; i < n; ++i) v[i] = static_cast<uint16_t>(i);
  return Permutation(std::move(v));
}

bool Permutation::is_identity() const {
  for (size_t i = 0; i < img.size(); ++i)
    if (img[i] != i) return false;
  return true;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree())
    throw std::invalid_argument("compose: degree mismatch");
  const int n = a.degree();
  std::vector<uint16_t> v(n);
  for (int i = 0; i < n; ++i) v[i] = a.img[b.img[i]];
  return Permutation(std::move(v));
}

Permutation inverse(const Permutation& g) {
  const int n = g.degree();
  std::vector<uint16_t> v(n);
  for (int i = 0; i < n; ++i) v[g.img[i]] = static_cast<uint16_t>(i);
  return Permutation(std::move(v));
}

Permutation conjugate(const Permutation& g, const Permutation& x) {
  if (g.degree() != x.degree())
    throw std::invalid_argument("conjugate: degree mismatch");
  const int n = g.degree();
  std::vector<uint16_t> v(n);
  // v = x^-1 g x without materializing x^-1: v[i] = x^-1(g(x(i)))
  std::vector<uint16_t> xinv(n);
  for (int i = 0; i < n; ++i) xinv[x.img[i]] = static_cast<uint16_t>(i);
  for (int i = 0; i < n; ++i) v[i] = xinv[g.img[x.img[i]]];
  return Permutation(std::move(v));
}

CycleType cycle_type(const Permutation& g) {
  const int n = g.degree();
  CycleType ct;
  std::vector<char> seen(n, 0);
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = g.img[j]) {
      seen[j] = 1;
      ++len;
    }
    ++ct.mult[len];
  }
  return ct;
}

bool is_valid_permutation(const Permutation& g) {
  const int n = g.degree();
  std::vector<char> hit(n, 0);
  for (int i = 0; i < n; ++i) {
    if (g.img[i] >= n || hit[g.img[i]]) return false;
    hit[g.img[i]] = 1;
  }
  return true;
}

uint64_t pack(const Permutation& g) {
  const int n = g.degree();
  if (n > 16) throw std::invalid_argument("pack: degree > 16");
  uint64_t code = 0;
  for (int i = 0; i < n; ++i)
    code = (code << 4) | static_cast<uint64_t>(g.img[i]);
  return code;
}

Permutation unpack(uint64_t code, int n) {
  if (n > 16) throw std::invalid_argument("unpack: degree > 16");
  std::vector<uint16_t> v(n);
  for (int i = n - 1; i >= 0; --i) {
    v[i] = static_cast<uint16_t>(code & 0xF);
    code >>= 4;
  }
  return Permutation(std::move(v));
}

Permutation parse_permutation(const std::string& text, int n_hint) {
  size_t pos = text.find_first_not_of(" \t\r\n");
  if (pos != std::string::npos && text[pos] == '(') {
    // cycle notation
    std::vector<std::vector<int>> cycles;
    size_t i = pos;
    int maxpt = n_hint;
    while (i < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
        continue;
      }
      if (text[i] != '(') throw std::invalid_argument("parse: expected '('");
      size_t close = text.find(')', i);
      if (close == std::string::npos)
        throw std::invalid_argument("parse: unbalanced '('");
      std::istringstream in(text.substr(i + 1, close - i - 1));
      std::vector<int> cyc;
      std::string tok;
      while (in >> tok) {
        // allow comma separators
        for (char& c : tok)
          if (c == ',') c = ' ';
        std::istringstream in2(tok);
        int p;
        while (in2 >> p) {
          if (p < 1) throw std::invalid_argument("parse: points are 1-based");
          maxpt = std::max(maxpt, p);
          cyc.push_back(p);
        }
      }
      if (!cyc.empty()) cycles.push_back(std::move(cyc));
      i = close + 1;
    }
    Permutation g = Permutation::identity(maxpt);
    for (const auto& cyc : cycles) {
      for (size_t j = 0; j < cyc.size(); ++j) {
        int from = cyc[j] - 1;
        int to = cyc[(j + 1) % cyc.size()] - 1;
        g.img[from] = static_cast<uint16_t>(to);
      }
    }
    if (!is_valid_permutation(g))
      throw std::invalid_argument("parse: repeated point in cycles");
    return g;
  }
  // image list
  std::istringstream in(text);
  std::vector<uint16_t> v;
  long x;
  while (in >> x) {
    if (x < 1) throw std::invalid_argument("parse: images are 1-based");
    v.push_back(static_cast<uint16_t>(x - 1));
  }
  Permutation g(std::move(v));
  if (!is_valid_permutation(g))
    throw std::invalid_argument("parse: not a bijection");
  return g;
}

std::string format_images(const Permutation& g) {
  std::ostringstream out;
  for (int i = 0; i < g.degree(); ++i) {
    if (i) out << ' ';
    out << g.img[i] + 1;
  }
  return out.str();
}

std::string format_cycles(const Permutation& g) {
  const int n = g.degree();
  std::ostringstream out;
  std::vector<char> seen(n, 0);
  bool any = false;
  for (int i = 0; i < n; ++i) {
    if (seen[i] || g.img[i] == i) {
      seen[i] = 1;
      continue;
    }
    out << '(';
    bool first = true;
    for (int j = i; !seen[j]; j = g.img[j]) {
      seen[j] = 1;
      if (!first) out << ' ';
      out << j + 1;
      first = false;
    }
    out << ')';
    any = true;
  }
  if (!any) return "()";
  return out.str();
}

}  // namespace dcos
