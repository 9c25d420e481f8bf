#include "dcos/closedform.hpp"

#include <stdexcept>

#include "dcos/sylow.hpp"

namespace dcos {

namespace {

void validate_abelian_params(int p, int k) {
  if (!is_prime(p)) throw std::invalid_argument("abelian: p not prime");
  if (k < 1 || k > p - 1)
    throw std::invalid_argument("abelian: 1 <= k <= p-1 required");
}

}  // namespace

AbelianCensus abelian_census(int p, int k) {
  validate_abelian_params(p, k);
  AbelianCensus out;
  out.p = p;
  out.k = k;
  out.n = k * p;
  out.p2_warning = (p == 2);
  const BigInt ppm1 = BigInt(p) * (p - 1);
  for (int a = k; a <= 2 * k; ++a) {
    BigInt sum = 0;
    for (int j = 2 * k - a; j <= k; ++j) {
      BigInt term = big_factorial(static_cast<long>(k - j) * p);
      term *= big_factorial(j);
      const BigInt ckj = big_binomial(k, j);
      term *= ckj * ckj;
      term *= big_pow(ppm1, j);
      term *= big_binomial(j, 2 * k - a);
      if ((j - (2 * k - a)) % 2 != 0) term = -term;
      sum += term;
    }
    BigInt na = exact_div(sum, big_pow(p, a), "abelian_census");
    if (na < 0) throw std::logic_error("abelian_census: negative count");
    out.values.push_back(std::move(na));
  }
  return out;
}

GenFunCoefficients abelian_genfun(int p, int k) {
  validate_abelian_params(p, k);
  GenFunCoefficients out;
  out.p = p;
  out.k = k;
  out.coeff.assign(k + 1, 0);
  const BigInt ppm1 = BigInt(p) * (p - 1);
  for (int i = 0; i <= k; ++i) {
    BigInt term = big_factorial(static_cast<long>(k - i) * p);
    term *= big_factorial(i);
    const BigInt cki = big_binomial(k, i);
    term *= cki * cki;
    term *= big_pow(ppm1, i);
    // expand (x-1)^i
    for (int c = 0; c <= i; ++c) {
      BigInt coef = term * big_binomial(i, c);
      if ((i - c) % 2 != 0) coef = -coef;
      out.coeff[c] += coef;
    }
  }
  return out;
}

std::vector<BigInt> gamma_sequence(int p, int k) {
  validate_abelian_params(p, k);
  std::vector<BigInt> gamma;
  const BigInt ppm1 = BigInt(p) * (p - 1);
  for (int j = 0; j <= k; ++j) {
    BigInt g = big_factorial(static_cast<long>(k - j) * p);
    g *= big_factorial(j);
    const BigInt ckj = big_binomial(k, j);
    g *= ckj * ckj;
    g *= big_pow(ppm1, j);
    gamma.push_back(std::move(g));
  }
  return gamma;
}

Thm33Bounds check_bounds_thm33(int p, int k) {
  validate_abelian_params(p, k);
  if (p < 3) throw std::invalid_argument("check_bounds_thm33: p >= 3 required");
  Thm33Bounds out;
  const BigInt kpf = big_factorial(static_cast<long>(k) * p);
  const BigInt p2k = big_pow(p, 2 * k);
  out.upper = BigRat(kpf, p2k);
  const BigInt pm2f = big_factorial(p - 2);
  out.lower = out.upper * BigRat(pm2f - 1, pm2f);
  out.n2k = abelian_census(p, k).values.back();
  out.pass = BigRat(out.n2k) >= out.lower && BigRat(out.n2k) <= out.upper;
  return out;
}

BigInt count_min_size(int n, int p) { return normalizer_index(profile(n, p)); }

BigInt second_size_count(int n, int p) {
  const PAdicProfile pr = profile(n, p);
  const auto& a = pr.digits;
  auto digit = [&](size_t i) {
    return i < a.size() ? a[i] : 0;
  };
  if (p == 2) {
    BigInt r = 0;
    for (size_t i = 0; i < a.size(); ++i) r += digit(i) * digit(i + 1);
    for (size_t i = 2; i < a.size(); ++i) r += a[i];
    return r;
  }
  BigInt sum = 0;
  const BigInt pm2f = big_factorial(p - 2);
  for (size_t i = 0; i + 1 < a.size() + 1; ++i) {
    const int ai1 = digit(i + 1);
    if (ai1 == 0) continue;
    BigInt inner = big_binomial(p + digit(i), p);
    inner *= big_pow(p - 1, i * static_cast<unsigned long>(p - 1));
    inner *= pm2f;
    inner -= 1;
    sum += ai1 * inner;
  }
  return exact_div(normalizer_index(pr) * sum, p, "second_size_count");
}

}  // namespace dcos
