#ifndef DCOS_BIGINT_HPP
#define DCOS_BIGINT_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace dcos {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt big_factorial(long n) {
  BigInt r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt big_binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (long i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;  // always exact at each step
  }
  return r;
}

inline BigInt big_pow(BigInt base, unsigned long e) {
  BigInt r = 1;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

// quotient of an exact division; throws if the division has a remainder
inline BigInt exact_div(const BigInt& a, const BigInt& b,
                        const char* what = "exact_div") {
  BigInt q = a / b;
  if (q * b != a)
    throw std::runtime_error(std::string(what) + ": division not exact");
  return q;
}

inline std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace dcos

#endif
