#ifndef DCOS_CLOSEDFORM_HPP
#define DCOS_CLOSEDFORM_HPP

#include <vector>

#include "dcos/bigint.hpp"

namespace dcos {

// Double-coset counts for the elementary abelian case n = kp, 1 <= k <= p-1:
// values[a-k] is n_a, the number of double cosets of size p^a. Derived for
// odd p; p = 2 (forcing k = 1) is evaluated anyway and flagged.
struct AbelianCensus {
  int p = 0;
  int k = 0;
  int n = 0;                    // k*p
  std::vector<BigInt> values;   // n_a for a = k..2k
  bool p2_warning = false;
};

// n_a = (1/p^a) sum_{j=2k-a}^{k} ((k-j)p)! j! C(k,j)^2 (p(p-1))^j
//       (-1)^(j-(2k-a)) C(j, 2k-a); every division must be exact.
AbelianCensus abelian_census(int p, int k);

// coefficients of f_{k,p}(x) = sum_i ((k-i)p)! i! C(k,i)^2 (p(p-1)(x-1))^i
// as a polynomial in x; f(1) = (kp)! and n_a = [x^(2k-a)] f / p^a.
struct GenFunCoefficients {
  int p = 0;
  int k = 0;
  std::vector<BigInt> coeff;  // x^0 .. x^k
};

GenFunCoefficients abelian_genfun(int p, int k);

// sharp bounds (kp)!/p^2k (1 - 1/(p-2)!) <= n_2k <= (kp)!/p^2k,
// compared exactly in rational arithmetic
struct Thm33Bounds {
  BigRat lower;
  BigRat upper;
  BigInt n2k;
  bool pass = false;
};

Thm33Bounds check_bounds_thm33(int p, int k);

// alternating-sum terms Gamma_j = ((k-j)p)! j! C(k,j)^2 (p(p-1))^j,
// strictly decreasing in j
std::vector<BigInt> gamma_sequence(int p, int k);

// number of double cosets of minimal size |P|: the normalizer index
BigInt count_min_size(int n, int p);

// number of double cosets of size p|P|:
//   p = 2: sum_i a_i a_{i+1} + sum_{i>=2} a_i
//   p > 2: (|N:P|/p) sum_i a_{i+1} (C(p+a_i, p) (p-1)^(i(p-1)) (p-2)! - 1)
BigInt second_size_count(int n, int p);

}  // namespace dcos

#endif
