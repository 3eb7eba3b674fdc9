#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace operadica {

// Exact rational; gmp keeps it canonical after every arithmetic operation.
using Scalar = mpq_class;
using BigInt = mpz_class;

inline Scalar parse_scalar(const std::string& text) {
  Scalar q;
  if (text.empty() || q.set_str(text, 10) != 0)
    throw std::invalid_argument("not a rational number: '" + text + "'");
  if (q.get_den() == 0) throw std::domain_error("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

// num/den in lowest terms (the two-argument mpq_class constructor does not reduce).
inline Scalar fraction(long num, long den) {
  if (den == 0) throw std::domain_error("division by zero");
  Scalar q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Scalar& q) { return q.get_str(); }
inline std::string to_string(const BigInt& z) { return z.get_str(); }

inline Scalar checked_div(const Scalar& a, const Scalar& b) {
  if (sgn(b) == 0) throw std::domain_error("division by zero");
  Scalar r = a / b;
  return r;
}

inline bool is_zero(const Scalar& q) { return sgn(q) == 0; }

}  // namespace operadica
