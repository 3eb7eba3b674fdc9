#pragma once

#include <stdexcept>
#include <string>

#include "operadica/kernel/scalar.hpp"

namespace operadica {

inline BigInt binomial(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) return BigInt(0);
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// Number of k-ary trees with n internal nodes: C(kn, n) / ((k-1)n + 1).
inline BigInt fuss_catalan(long long k, long long n) {
  if (k < 1 || n < 0) throw std::domain_error("fuss_catalan needs k >= 1 and n >= 0");
  BigInt num = binomial(k * n, n);
  BigInt den = static_cast<long>((k - 1) * n + 1);
  BigInt q = num / den;
  return q;
}

// Binary trees with n leaves having k internal left children:
// C(n-2, k) C(n-1, k) / (k + 1).
inline BigInt narayana(long long n, long long k) {
  if (n < 2 || k < 0 || k > n - 2)
    throw std::domain_error("narayana(n, k) needs n >= 2 and 0 <= k <= n - 2");
  BigInt num = binomial(n - 2, k) * binomial(n - 1, k);
  BigInt q = num / static_cast<long>(k + 1);
  return q;
}

// Schroder trees with n leaves.
inline BigInt schroder_count(long long n) {
  if (n < 1) throw std::domain_error("schroder_count needs n >= 1");
  if (n == 1) return BigInt(1);
  BigInt s = 0;
  BigInt pow2 = 1;
  for (long long k = 0; k <= n - 2; ++k) {
    s += pow2 * narayana(n, k);
    pow2 *= 2;
  }
  return s;
}

inline BigInt count_formula(const std::string& name, long long a, long long b = 0) {
  if (name == "fuss_catalan") return fuss_catalan(a, b);
  if (name == "narayana") return narayana(a, b);
  if (name == "schroder_count") return schroder_count(a);
  throw std::invalid_argument("unknown count formula '" + name + "'");
}

}  // namespace operadica
