#pragma once

#include <cstddef>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "operadica/kernel/scalar.hpp"

namespace operadica {

inline constexpr std::size_t kDefaultOrder = 10;

// Truncated series c_0 + c_1 t + ... + c_N t^N.
class PowerSeries {
 public:
  explicit PowerSeries(std::size_t order = kDefaultOrder) : c_(order + 1, Scalar(0)) {}

  PowerSeries(std::size_t order, std::vector<Scalar> coeffs) : c_(order + 1, Scalar(0)) {
    if (coeffs.size() > order + 1)
      throw std::invalid_argument("series of order " + std::to_string(order) + " given " +
                                  std::to_string(coeffs.size()) + " coefficients");
    for (std::size_t i = 0; i < coeffs.size(); ++i) c_[i] = coeffs[i];
  }

  static PowerSeries variable(std::size_t order) {
    PowerSeries s(order);
    if (order >= 1) s.c_[1] = 1;
    return s;
  }

  static PowerSeries constant(std::size_t order, const Scalar& v) {
    PowerSeries s(order);
    s.c_[0] = v;
    return s;
  }

  // 1/(1 - t)
  static PowerSeries geometric(std::size_t order) {
    return PowerSeries(order, std::vector<Scalar>(order + 1, Scalar(1)));
  }

  std::size_t order() const { return c_.size() - 1; }
  const Scalar& operator[](std::size_t i) const { return c_.at(i); }
  Scalar& operator[](std::size_t i) { return c_.at(i); }
  const std::vector<Scalar>& coefficients() const { return c_; }

  friend bool operator==(const PowerSeries& a, const PowerSeries& b) { return a.c_ == b.c_; }

 private:
  std::vector<Scalar> c_;
};

inline std::ostream& operator<<(std::ostream& os, const PowerSeries& s) {
  os << "[";
  for (std::size_t i = 0; i <= s.order(); ++i) os << (i ? ", " : "") << s[i].get_str();
  return os << "]";
}

namespace detail {
inline void require_same_order(const PowerSeries& a, const PowerSeries& b, const char* what) {
  if (a.order() != b.order())
    throw std::invalid_argument(std::string(what) + ": truncation orders differ (" +
                                std::to_string(a.order()) + " vs " + std::to_string(b.order()) + ")");
}
}  // namespace detail

inline PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
  detail::require_same_order(a, b, "add");
  PowerSeries r(a.order());
  for (std::size_t i = 0; i <= a.order(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
  detail::require_same_order(a, b, "sub");
  PowerSeries r(a.order());
  for (std::size_t i = 0; i <= a.order(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline PowerSeries operator-(const PowerSeries& a) {
  PowerSeries r(a.order());
  for (std::size_t i = 0; i <= a.order(); ++i) r[i] = -a[i];
  return r;
}

inline PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
  detail::require_same_order(a, b, "mul");
  const std::size_t n = a.order();
  PowerSeries r(n);
  for (std::size_t i = 0; i <= n; ++i) {
    if (is_zero(a[i])) continue;
    for (std::size_t j = 0; i + j <= n; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

inline PowerSeries scale(const PowerSeries& a, const Scalar& k) {
  PowerSeries r(a.order());
  for (std::size_t i = 0; i <= a.order(); ++i) r[i] = a[i] * k;
  return r;
}

inline PowerSeries hadamard(const PowerSeries& a, const PowerSeries& b) {
  detail::require_same_order(a, b, "hadamard");
  PowerSeries r(a.order());
  for (std::size_t i = 0; i <= a.order(); ++i) r[i] = a[i] * b[i];
  return r;
}

enum class SeriesOp { add, mul, hadamard };

inline PowerSeries ps_add_mul(const PowerSeries& a, const PowerSeries& b, SeriesOp kind) {
  switch (kind) {
    case SeriesOp::add: return a + b;
    case SeriesOp::mul: return a * b;
    case SeriesOp::hadamard: return hadamard(a, b);
  }
  throw std::logic_error("unknown series operation");
}

// a(lambda t)
inline PowerSeries dilate(const PowerSeries& a, const Scalar& lambda) {
  PowerSeries r(a.order());
  Scalar p = 1;
  for (std::size_t i = 0; i <= a.order(); ++i) {
    r[i] = a[i] * p;
    p *= lambda;
  }
  return r;
}

inline PowerSeries reciprocal(const PowerSeries& a) {
  if (is_zero(a[0])) throw std::domain_error("reciprocal requires a nonzero constant term");
  const std::size_t n = a.order();
  PowerSeries r(n);
  Scalar inv = checked_div(Scalar(1), a[0]);
  r[0] = inv;
  for (std::size_t k = 1; k <= n; ++k) {
    Scalar s = 0;
    for (std::size_t j = 1; j <= k; ++j) s += a[j] * r[k - j];
    r[k] = -s * inv;
  }
  return r;
}

// a(b(t)), Horner scheme.
inline PowerSeries ps_compose(const PowerSeries& a, const PowerSeries& b) {
  detail::require_same_order(a, b, "compose");
  if (!is_zero(b[0])) throw std::domain_error("composition requires augmented argument");
  const std::size_t n = a.order();
  PowerSeries r = PowerSeries::constant(n, a[n]);
  for (std::size_t k = n; k-- > 0;) {
    r = r * b;
    r[0] += a[k];
  }
  return r;
}

// Compositional inverse: the unique g with g(0) = 0 and a(g(t)) = t.
inline PowerSeries ps_reversion(const PowerSeries& a) {
  const std::size_t n = a.order();
  if (!is_zero(a[0])) throw std::domain_error("reversion requires a(0) = 0");
  if (n == 0) return PowerSeries(0);
  if (is_zero(a[1])) throw std::domain_error("reversion requires a'(0) != 0");
  Scalar inv = checked_div(Scalar(1), a[1]);
  // Each pass of g <- (t - sum_{j>=2} a_j g^j) / a_1 fixes one more coefficient.
  PowerSeries g = scale(PowerSeries::variable(n), inv);
  PowerSeries higher = a;
  higher[1] = 0;
  for (std::size_t pass = 1; pass < n; ++pass) {
    PowerSeries next = PowerSeries::variable(n) - ps_compose(higher, g);
    g = scale(next, inv);
  }
  return g;
}

// Truncation order taken from OPERADICA_TRUNC when set, else the default.
inline std::size_t truncation_order_from_env() {
  const char* v = std::getenv("OPERADICA_TRUNC");
  if (v == nullptr || *v == '\0') return kDefaultOrder;
  char* end = nullptr;
  long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 0 || n > 10000)
    throw std::invalid_argument(std::string("OPERADICA_TRUNC is not a valid order: '") + v + "'");
  return static_cast<std::size_t>(n);
}

}  // namespace operadica
