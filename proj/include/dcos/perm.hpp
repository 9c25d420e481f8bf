#ifndef DCOS_PERM_HPP
#define DCOS_PERM_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace dcos {

// Permutation of {1,...,n}, stored 0-based: img[i] is the image of point i.
// All external interfaces (parsing, printing, cycle notation) are 1-based.
// Values are immutable by convention once built; operations return new values.
struct Permutation {
  std::vector<uint16_t> img;

  Permutation() = default;
  explicit Permutation(std::vector<uint16_t> images) : img(std::move(images)) {}

  static Permutation identity(int n);

  int degree() const { return static_cast<int>(img.size()); }
  uint16_t operator()(uint16_t i) const { return img[i]; }
  bool is_identity() const;

  bool operator==(const Permutation& o) const { return img == o.img; }
  bool operator!=(const Permutation& o) const { return img != o.img; }
  bool operator<(const Permutation& o) const { return img < o.img; }
};

// Number of j-cycles for each j present; entries with zero count are omitted.
struct CycleType {
  std::map<int, int> mult;

  bool operator==(const CycleType& o) const { return mult == o.mult; }
  bool operator<(const CycleType& o) const { return mult < o.mult; }
};

// result(i) = a(b(i)): apply b first. Throws on degree mismatch.
Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& g);
// x^-1 * g * x; cycle type is preserved.
Permutation conjugate(const Permutation& g, const Permutation& x);
CycleType cycle_type(const Permutation& g);
// order of the centralizer of the class: prod j^(m_j) * m_j!
// (class size is n!/z_lambda)
bool is_valid_permutation(const Permutation& g);

// 4 bits per point, point 1 in the high nibble so that packed order equals
// lexicographic order on image arrays. Requires n <= 16.
uint64_t pack(const Permutation& g);
Permutation unpack(uint64_t code, int n);

// Accepts a 1-based image list "2 3 1" or cycle notation "(1 2 3)(4 5)".
// For cycle notation the degree is max(point seen, n_hint); "()" is the
// identity of degree n_hint.
Permutation parse_permutation(const std::string& text, int n_hint = 0);
// One-line 1-based image list.
std::string format_images(const Permutation& g);
// Cycle notation without fixed points; identity prints as "()".
std::string format_cycles(const Permutation& g);

}  // namespace dcos

#endif
