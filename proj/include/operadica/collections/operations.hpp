#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "operadica/collections/graded_collection.hpp"

namespace operadica {

namespace detail {

// Calls f on every sequence of k positive integers summing to n.
inline void for_each_composition(std::size_t n, std::size_t k,
                                 const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> parts;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t left, std::size_t slots) {
    if (slots == 0) {
      if (left == 0) f(parts);
      return;
    }
    for (std::size_t p = 1; p + (slots - 1) <= left; ++p) {
      parts.push_back(p);
      rec(left - p, slots - 1);
      parts.pop_back();
    }
  };
  rec(n, k);
}

// Cartesian product of the per-slot object lists.
inline void for_each_tuple(const std::vector<const std::vector<Obj>*>& slots,
                           const std::function<void(const std::vector<Obj>&)>& f) {
  std::vector<Obj> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == slots.size()) {
      f(cur);
      return;
    }
    for (const auto& o : *slots[i]) {
      cur.push_back(o);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

// All tuples of objects of c whose sizes are exactly the given sizes.
inline void for_each_sized_tuple(const GradedCollection& c, const std::vector<std::size_t>& sizes,
                                 const std::function<void(const std::vector<Obj>&)>& f) {
  std::vector<const std::vector<Obj>*> slots;
  for (auto s : sizes) slots.push_back(&c.enumerate_ref(s));
  for_each_tuple(slots, f);
}

inline const Obj& payload(const Obj& o, const std::string& tag, std::size_t arity) {
  if (!o.has_tag(tag) || o.length() != arity + 1)
    throw std::invalid_argument("expected a (" + tag + " ...) object, got " + o.str());
  return o[1];
}

[[noreturn]] inline void not_combinatorial(const std::string& what, const std::string& of) {
  throw std::domain_error(what + " of " + of +
                          " is not combinatorial: the argument has objects of size 0");
}

}  // namespace detail

enum class BinaryKind { sum, cartesian_plus, hadamard, composition };

inline GradedCollection combine_binary(BinaryKind kind, const GradedCollection& c1,
                                       const GradedCollection& c2) {
  switch (kind) {
    case BinaryKind::sum:
      return GradedCollection(
          "(" + c1.name() + " + " + c2.name() + ")",
          [c1, c2](std::size_t n) {
            std::vector<Obj> out;
            for (const auto& x : c1.enumerate_ref(n)) out.push_back(Obj::tagged("sum", 1, x));
            for (const auto& y : c2.enumerate_ref(n)) out.push_back(Obj::tagged("sum", 2, y));
            return out;
          },
          [c1, c2](const Obj& o) -> long long {
            if (!o.has_tag("sum") || o.length() != 3) throw std::invalid_argument("not a sum object");
            long long side = o[1].as_int();
            if (side == 1) return c1.size_of(o[2]);
            if (side == 2) return c2.size_of(o[2]);
            throw std::invalid_argument("sum side must be 1 or 2");
          });
    case BinaryKind::cartesian_plus:
      return GradedCollection(
          "(" + c1.name() + " x " + c2.name() + ")",
          [c1, c2](std::size_t n) {
            std::vector<Obj> out;
            for (std::size_t a = 0; a <= n; ++a)
              for (const auto& x : c1.enumerate_ref(a))
                for (const auto& y : c2.enumerate_ref(n - a)) out.push_back(Obj::tagged("pair", x, y));
            return out;
          },
          [c1, c2](const Obj& o) -> long long {
            if (!o.has_tag("pair") || o.length() != 3) throw std::invalid_argument("not a pair");
            return c1.size_of(o[1]) + c2.size_of(o[2]);
          });
    case BinaryKind::hadamard:
      return GradedCollection(
          "(" + c1.name() + " # " + c2.name() + ")",
          [c1, c2](std::size_t n) {
            std::vector<Obj> out;
            for (const auto& x : c1.enumerate_ref(n))
              for (const auto& y : c2.enumerate_ref(n)) out.push_back(Obj::tagged("had", x, y));
            return out;
          },
          [c1, c2](const Obj& o) -> long long {
            if (!o.has_tag("had") || o.length() != 3) throw std::invalid_argument("not a had pair");
            long long a = c1.size_of(o[1]);
            if (a != c2.size_of(o[2])) throw std::invalid_argument("had pair with unequal sizes");
            return a;
          });
    case BinaryKind::composition:
      return GradedCollection(
          "(" + c1.name() + " o " + c2.name() + ")",
          [c1, c2](std::size_t n) {
            if (!c2.is_augmented()) detail::not_combinatorial("composition", c2.name());
            std::vector<Obj> out;
            for (std::size_t k = 0; k <= n; ++k) {
              const auto& heads = c1.enumerate_ref(k);
              if (heads.empty()) continue;
              if (k == 0) {
                if (n == 0)
                  for (const auto& x : heads) out.push_back(Obj::tagged("odot", x, Obj::tagged("tuple")));
                continue;
              }
              detail::for_each_composition(n, k, [&](const std::vector<std::size_t>& sizes) {
                detail::for_each_sized_tuple(c2, sizes, [&](const std::vector<Obj>& ys) {
                  Obj tuple = Obj::tagged_list("tuple", ys);
                  for (const auto& x : heads) out.push_back(Obj::tagged("odot", x, tuple));
                });
              });
            }
            return out;
          },
          [c1, c2](const Obj& o) -> long long {
            if (!o.has_tag("odot") || o.length() != 3 || !o[2].has_tag("tuple"))
              throw std::invalid_argument("not an odot object");
            const auto& ys = o[2].items();
            if (c1.size_of(o[1]) != static_cast<long long>(ys.size() - 1))
              throw std::invalid_argument("odot head size differs from tuple length");
            long long s = 0;
            for (std::size_t i = 1; i < ys.size(); ++i) s += c2.size_of(ys[i]);
            return s;
          });
  }
  throw std::logic_error("unknown binary kind");
}

struct UnaryKind {
  enum Tag { list, multiset, set, suspension, augmentation, coloration } tag;
  long long param = 0;  // shift for suspension, color count for coloration

  static UnaryKind List() { return {list, 0}; }
  static UnaryKind Multiset() { return {multiset, 0}; }
  static UnaryKind Set() { return {set, 0}; }
  static UnaryKind Suspension(long long l) { return {suspension, l}; }
  static UnaryKind Augmentation() { return {augmentation, 0}; }
  static UnaryKind Coloration(long long m) { return {coloration, m}; }
};

namespace detail {

// Multisets (strict=false) or sets (strict=true) of objects of c with total size n,
// listed as non-increasing sequences.
inline std::vector<Obj> bag_objects(const GradedCollection& c, std::size_t n, bool strict,
                                    const std::string& tag) {
  std::vector<Obj> pool;
  std::vector<std::size_t> sizes;
  for (std::size_t s = strict ? 0 : 1; s <= n; ++s)
    for (const auto& o : c.enumerate_ref(s)) {
      pool.push_back(o);
      sizes.push_back(s);
    }
  // Sort the pool so that "non-increasing" is in object order.
  std::vector<std::size_t> idx(pool.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return pool[a] < pool[b]; });
  std::vector<Obj> out;
  std::vector<Obj> cur;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t left, std::size_t bound) {
    if (left == 0) out.push_back(Obj::tagged_list(tag, cur));
    for (std::size_t j = bound; j-- > 0;) {
      std::size_t i = idx[j];
      if (sizes[i] > left) continue;
      cur.push_back(pool[i]);
      rec(left - sizes[i], strict ? j : j + 1);
      cur.pop_back();
    }
  };
  rec(n, idx.size());
  return out;
}

}  // namespace detail

inline GradedCollection derive_unary(UnaryKind kind, const GradedCollection& c) {
  switch (kind.tag) {
    case UnaryKind::list:
      return GradedCollection(
          "List(" + c.name() + ")",
          [c](std::size_t n) {
            if (!c.is_augmented()) detail::not_combinatorial("list collection", c.name());
            std::vector<Obj> out;
            if (n == 0) out.push_back(Obj::tagged("list"));
            for (std::size_t k = 1; k <= n; ++k)
              detail::for_each_composition(n, k, [&](const std::vector<std::size_t>& sizes) {
                detail::for_each_sized_tuple(c, sizes, [&](const std::vector<Obj>& xs) {
                  out.push_back(Obj::tagged_list("list", xs));
                });
              });
            return out;
          },
          [c](const Obj& o) -> long long {
            if (!o.has_tag("list")) throw std::invalid_argument("not a list object");
            long long s = 0;
            for (std::size_t i = 1; i < o.length(); ++i) s += c.size_of(o[i]);
            return s;
          });
    case UnaryKind::multiset:
    case UnaryKind::set: {
      bool strict = kind.tag == UnaryKind::set;
      std::string tag = strict ? "set" : "multiset";
      return GradedCollection(
          std::string(strict ? "Set(" : "Multiset(") + c.name() + ")",
          [c, strict, tag](std::size_t n) {
            if (!strict && !c.is_augmented()) detail::not_combinatorial("multiset collection", c.name());
            return detail::bag_objects(c, n, strict, tag);
          },
          [c, strict, tag](const Obj& o) -> long long {
            if (!o.has_tag(tag)) throw std::invalid_argument("not a " + tag + " object");
            long long s = 0;
            for (std::size_t i = 1; i < o.length(); ++i) {
              if (i > 1 && (strict ? !(o[i] < o[i - 1]) : (o[i - 1] < o[i])))
                throw std::invalid_argument(tag + " elements out of canonical order");
              s += c.size_of(o[i]);
            }
            return s;
          });
    }
    case UnaryKind::suspension: {
      long long l = kind.param;
      return GradedCollection(
          "Susp" + std::to_string(l) + "(" + c.name() + ")",
          [c, l](std::size_t n) {
            long long m = static_cast<long long>(n) - l;
            if (m < 0) return std::vector<Obj>{};
            return c.enumerate(static_cast<std::size_t>(m));
          },
          [c, l](const Obj& o) -> long long {
            long long s = c.size_of(o) + l;
            if (s < 0) throw std::invalid_argument("object dropped by the suspension");
            return s;
          });
    }
    case UnaryKind::augmentation:
      return GradedCollection(
          "Aug(" + c.name() + ")",
          [c](std::size_t n) { return n == 0 ? std::vector<Obj>{} : c.enumerate(n); },
          [c](const Obj& o) -> long long {
            long long s = c.size_of(o);
            if (s == 0) throw std::invalid_argument("size-0 object removed by augmentation");
            return s;
          });
    case UnaryKind::coloration: {
      long long m = kind.param;
      if (m < 1) throw std::invalid_argument("coloration needs at least one color");
      return GradedCollection(
          "Col" + std::to_string(m) + "(" + c.name() + ")",
          [c, m](std::size_t n) {
            std::vector<Obj> out;
            std::vector<long long> word(n, 1);
            for (const auto& x : c.enumerate_ref(n)) {
              for (long long a = 1; a <= m; ++a) {
                std::fill(word.begin(), word.end(), 1);
                for (;;) {
                  Obj::List u;
                  for (long long w : word) u.push_back(Obj::integer(w));
                  out.push_back(Obj::tagged("col", a, x, Obj::list(u)));
                  std::size_t p = n;
                  while (p > 0 && word[p - 1] == m) word[--p] = 1;
                  if (p == 0) break;
                  ++word[p - 1];
                }
              }
            }
            return out;
          },
          [c, m](const Obj& o) -> long long {
            if (!o.has_tag("col") || o.length() != 4) throw std::invalid_argument("not a col object");
            long long a = o[1].as_int();
            long long s = c.size_of(o[2]);
            const auto& u = o[3].items();
            if (a < 1 || a > m || static_cast<long long>(u.size()) != s)
              throw std::invalid_argument("bad coloration object " + o.str());
            for (const auto& w : u)
              if (w.as_int() < 1 || w.as_int() > m) throw std::invalid_argument("color out of range");
            return s;
          });
    }
  }
  throw std::logic_error("unknown unary kind");
}

// A collection with one object of size 1, the symbol "point".
inline GradedCollection singleton_collection() {
  return GradedCollection(
      "{.}",
      [](std::size_t n) { return n == 1 ? std::vector<Obj>{Obj::symbol("point")} : std::vector<Obj>{}; },
      [](const Obj& o) -> long long {
        if (!o.is_symbol() || o.as_symbol() != "point") throw std::invalid_argument("not the point");
        return 1;
      });
}

}  // namespace operadica
