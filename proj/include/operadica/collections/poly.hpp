#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "operadica/kernel/scalar.hpp"

namespace operadica {

// Finite linear combination of keys; zero coefficients are never stored.
template <typename K>
class Poly {
 public:
  using Map = std::map<K, Scalar>;

  Poly() = default;
  explicit Poly(const K& k, const Scalar& c = Scalar(1)) { add(k, c); }

  static Poly characteristic(const std::vector<K>& keys) {
    Poly p;
    for (const auto& k : keys) {
      if (p.terms_.empty() || p.terms_.rbegin()->first < k) p.terms_.emplace_hint(p.terms_.end(), k, Scalar(1));
      else p.add(k, Scalar(1));
    }
    return p;
  }

  void add(const K& k, const Scalar& c) {
    if (is_zero(c)) return;
    auto [it, fresh] = terms_.try_emplace(k, c);
    if (fresh) return;
    it->second += c;
    if (is_zero(it->second)) terms_.erase(it);
  }

  void add(const Poly& other, const Scalar& factor = Scalar(1)) {
    if (is_zero(factor)) return;
    for (const auto& [k, c] : other.terms_) {
      Scalar v = c * factor;
      add(k, v);
    }
  }

  Scalar coefficient(const K& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Map& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  // Single key with coefficient 1.
  bool is_basis_element() const { return terms_.size() == 1 && terms_.begin()->second == 1; }
  const K& sole_key() const {
    if (terms_.size() != 1) throw std::logic_error("polynomial is not a single term");
    return terms_.begin()->first;
  }

  // Largest key in the support (requires a nonempty polynomial).
  const K& leading_key() const {
    if (terms_.empty()) throw std::logic_error("leading key of zero polynomial");
    return terms_.rbegin()->first;
  }

  void erase(const K& k) { terms_.erase(k); }

  Poly scaled(const Scalar& f) const {
    Poly r;
    if (is_zero(f)) return r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, c * f);
    return r;
  }

  template <typename F>
  auto map_keys(F f) const {
    using K2 = std::decay_t<decltype(f(std::declval<const K&>()))>;
    Poly<K2> r;
    for (const auto& [k, c] : terms_) r.add(f(k), c);
    return r;
  }

  friend Poly operator+(Poly a, const Poly& b) {
    a.add(b);
    return a;
  }
  friend Poly operator-(Poly a, const Poly& b) {
    a.add(b, Scalar(-1));
    return a;
  }
  friend Poly operator*(const Scalar& f, const Poly& p) { return p.scaled(f); }
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
  friend bool operator<(const Poly& a, const Poly& b) { return a.terms_ < b.terms_; }

  // "c1*k1 + c2*k2", or "0".
  std::string str(const std::function<std::string(const K&)>& show) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      if (!first) out += sgn(c) < 0 ? " - " : " + ";
      else if (sgn(c) < 0) out += "-";
      first = false;
      Scalar a = abs(c);
      if (a != 1) out += a.get_str() + "*";
      out += show(k);
    }
    return out;
  }

 private:
  Map terms_;
};

}  // namespace operadica
