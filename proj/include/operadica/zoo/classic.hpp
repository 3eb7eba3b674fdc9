#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "operadica/collections/families.hpp"
#include "operadica/operads/operad.hpp"

namespace operadica {

namespace detail {

inline long long checked_index(const Obj& x, std::size_t i, long long n) {
  if (i < 1 || static_cast<long long>(i) > n)
    throw std::out_of_range("partial composition index " + std::to_string(i) + " outside [1, " + std::to_string(n) +
                            "] for " + x.str());
  return static_cast<long long>(i);
}

inline Obj bin_node(const Obj& l, const Obj& r) { return Obj::tagged("node", l, r); }

// Replaces the i-th leaf (left to right) by s; i counts down and ends at 0 once done.
inline Obj graft_binary_leaf(const Obj& t, std::size_t& i, const Obj& s) {
  if (t.has_tag("leaf")) {
    if (i == 1) {
      i = 0;
      return s;
    }
    if (i > 0) --i;
    return t;
  }
  Obj l = graft_binary_leaf(t[1], i, s);
  Obj r = graft_binary_leaf(t[2], i, s);
  return bin_node(l, r);
}

inline Obj replace_leftmost_leaf(const Obj& t, const Obj& a) {
  return t.has_tag("leaf") ? a : bin_node(replace_leftmost_leaf(t[1], a), t[2]);
}

inline Obj replace_rightmost_leaf(const Obj& t, const Obj& b) {
  return t.has_tag("leaf") ? b : bin_node(t[1], replace_rightmost_leaf(t[2], b));
}

// Replaces the i-th internal node u in infix order by s, u's left subtree going on the
// first leaf of s and u's right subtree on its last leaf.
inline Obj dup_substitute(const Obj& t, std::size_t& i, const Obj& s) {
  if (t.has_tag("leaf")) return t;
  Obj l = dup_substitute(t[1], i, s);
  if (i == 0) return bin_node(l, t[2]);
  if (--i == 0) return replace_rightmost_leaf(replace_leftmost_leaf(s, t[1]), t[2]);
  return bin_node(t[1], dup_substitute(t[2], i, s));
}

}  // namespace detail

// (a n), one element per arity.
inline Operad as_operad() {
  GradedCollection carrier(
      "as", [](std::size_t n) { return n == 0 ? std::vector<Obj>{} : std::vector<Obj>{Obj::tagged("a", static_cast<long long>(n))}; },
      [](const Obj& o) -> long long {
        if (!o.has_tag("a") || o.length() != 2 || !o[1].is_int() || o[1].as_int() < 1)
          throw std::invalid_argument("not an element of As: " + o.str());
        return o[1].as_int();
      });
  auto compose = [](const Obj& x, std::size_t i, const Obj& y) {
    long long n = x[1].as_int(), m = y[1].as_int();
    detail::checked_index(x, i, n);
    return ObjPoly(Obj::tagged("a", n + m - 1));
  };
  return Operad("as", carrier, compose, Obj::tagged("a", 1LL));
}

inline Operad per_operad() {
  auto compose = [](const Obj& x, std::size_t i, const Obj& y) {
    auto s = x.int_args(), v = y.int_args();
    long long n = static_cast<long long>(s.size()), m = static_cast<long long>(v.size());
    detail::checked_index(x, i, n);
    long long si = s[i - 1];
    std::vector<long long> out;
    for (long long k = 0; k < n; ++k) {
      if (k == static_cast<long long>(i) - 1) {
        for (long long b : v) out.push_back(b + si - 1);
      } else {
        out.push_back(s[k] > si ? s[k] + m - 1 : s[k]);
      }
    }
    return ObjPoly(Obj::int_list("perm", out));
  };
  return Operad("per", permutations(), compose, Obj::int_list("perm", {1}));
}

// (e n k), 1 <= k <= n.
inline Operad dias_operad() {
  GradedCollection carrier(
      "dias",
      [](std::size_t n) {
        std::vector<Obj> out;
        for (std::size_t k = 1; k <= n; ++k) out.push_back(Obj::tagged("e", static_cast<long long>(n), static_cast<long long>(k)));
        return out;
      },
      [](const Obj& o) -> long long {
        if (!o.has_tag("e") || o.length() != 3 || !o[1].is_int() || !o[2].is_int() || o[2].as_int() < 1 ||
            o[2].as_int() > o[1].as_int())
          throw std::invalid_argument("not an element of Dias: " + o.str());
        return o[1].as_int();
      });
  auto compose = [](const Obj& x, std::size_t i, const Obj& y) {
    long long n = x[1].as_int(), k = x[2].as_int(), m = y[1].as_int(), l = y[2].as_int();
    long long ii = detail::checked_index(x, i, n);
    long long pos = ii < k ? k + m - 1 : ii == k ? k + l - 1 : k;
    return ObjPoly(Obj::tagged("e", n + m - 1, pos));
  };
  return Operad("dias", carrier, compose, Obj::tagged("e", 1LL, 1LL));
}

// Binary trees by leaves, grafting on the i-th leaf.
inline Operad mag_operad() {
  auto compose = [](const Obj& x, std::size_t i, const Obj& y) {
    std::size_t k = i;
    Obj r = detail::graft_binary_leaf(x, k, y);
    if (i == 0 || k != 0) throw std::out_of_range("partial composition index " + std::to_string(i) + " outside the arity of " + x.str());
    return ObjPoly(r);
  };
  return Operad("mag", binary_trees_leaf(), compose, detail::leaf_obj());
}

// Nonempty binary trees by internal nodes.
inline Operad dup_operad() {
  GradedCollection all = binary_trees_node();
  GradedCollection carrier(
      "dup", [all](std::size_t n) { return n == 0 ? std::vector<Obj>{} : all.enumerate(n); },
      [all](const Obj& o) -> long long {
        long long n = all.size_of(o);
        if (n < 1) throw std::invalid_argument("Dup has no empty tree");
        return n;
      });
  auto compose = [](const Obj& x, std::size_t i, const Obj& y) {
    std::size_t k = i;
    Obj r = detail::dup_substitute(x, k, y);
    if (i == 0 || k != 0) throw std::out_of_range("partial composition index " + std::to_string(i) + " outside the arity of " + x.str());
    return ObjPoly(r);
  };
  return Operad("dup", carrier, compose, detail::bin_node(detail::leaf_obj(), detail::leaf_obj()));
}

// Motzkin words by length; u o_i v replaces u(i) by v + u(i).
inline Operad motz_operad() {
  auto compose = [](const Obj& x, std::size_t i, const Obj& y) {
    auto u = x.int_args(), v = y.int_args();
    detail::checked_index(x, i, static_cast<long long>(u.size()));
    std::vector<long long> w(u.begin(), u.begin() + static_cast<long>(i) - 1);
    for (long long b : v) w.push_back(b + u[i - 1]);
    w.insert(w.end(), u.begin() + static_cast<long>(i), u.end());
    return ObjPoly(Obj::int_list("motz", w));
  };
  return Operad("motz", motzkin_words(), compose, Obj::int_list("motz", {0}));
}

}  // namespace operadica
