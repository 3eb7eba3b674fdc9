#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "operadica/operads/operad.hpp"

namespace operadica {

// A noncrossing tree of size n: n arcs on the vertices 1..n+1, base (1, n+1) included.
struct NCTree {
  long long size = 0;
  std::set<std::pair<long long, long long>> arcs;

  Obj to_obj() const {
    Obj::List as;
    for (const auto& [x, y] : arcs) as.push_back(Obj::list({Obj::integer(x), Obj::integer(y)}));
    return Obj::tagged("nct", size, Obj::list(std::move(as)));
  }

  // Throws unless the arcs form a noncrossing spanning tree containing the base.
  void validate() const {
    auto bad = [&](const std::string& why) { return std::invalid_argument("not a noncrossing tree (" + why + "): " + to_obj().str()); };
    if (size < 1) throw bad("size must be positive");
    if (static_cast<long long>(arcs.size()) != size) throw bad("needs exactly " + std::to_string(size) + " arcs");
    if (!arcs.count({1, size + 1})) throw bad("base missing");
    std::vector<long long> parent(static_cast<std::size_t>(size + 2));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](long long v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (const auto& [x, y] : arcs) {
      if (x < 1 || x >= y || y > size + 1) throw bad("arc out of range");
      long long a = find(x), b = find(y);
      if (a == b) throw bad("cycle");
      parent[a] = b;
    }
    for (const auto& [a, b] : arcs)
      for (const auto& [c, d] : arcs)
        if (a < c && c < b && b < d) throw bad("crossing arcs");
  }

  static NCTree from_obj(const Obj& o) {
    if (!o.has_tag("nct") || o.length() != 3 || !o[1].is_int() || !o[2].is_list())
      throw std::invalid_argument("expected (nct n ((x y) ...)), got " + o.str());
    NCTree t;
    t.size = o[1].as_int();
    for (const auto& a : o[2].items()) {
      if (!a.is_list() || a.length() != 2 || !a[0].is_int() || !a[1].is_int())
        throw std::invalid_argument("bad arc " + a.str() + " in " + o.str());
      t.arcs.emplace(std::min(a[0].as_int(), a[1].as_int()), std::max(a[0].as_int(), a[1].as_int()));
    }
    t.validate();
    return t;
  }
};

namespace detail {

// Arc sets of the noncrossing spanning trees on [a, b], and of those containing the
// arc (a, b). The largest neighbour k of a splits a spanning tree on [a, b] into one
// on [a, k] containing (a, k) and a spanning tree on [k, b]; removing (a, k) from the
// former leaves spanning trees on [a, m] and [m + 1, k].
class NCTEnumerator {
 public:
  using Arcs = std::vector<std::pair<long long, long long>>;

  std::vector<Arcs> rooted_at(long long a, long long b) { return shifted(rooted(b - a), a - 1); }

 private:
  // Shapes are computed on [1, len + 1] and shifted.
  static std::vector<Arcs> shifted(const std::vector<Arcs>& v, long long d) {
    std::vector<Arcs> out = v;
    for (auto& arcs : out)
      for (auto& [x, y] : arcs) x += d, y += d;
    return out;
  }

  const std::vector<Arcs>& rooted(long long len) {
    auto& memo = root_[len];
    if (!memo.empty()) return memo;
    std::vector<Arcs> out;
    for (long long m = 1; m <= len; ++m) {
      auto left = shifted(spanning_shape(m - 1), 0);
      auto right = shifted(spanning_shape(len - m), m);
      for (const auto& l : left)
        for (const auto& r : right) {
          Arcs arcs{{1, len + 1}};
          arcs.insert(arcs.end(), l.begin(), l.end());
          arcs.insert(arcs.end(), r.begin(), r.end());
          out.push_back(std::move(arcs));
        }
    }
    memo = std::move(out);
    return memo;
  }

  const std::vector<Arcs>& spanning_shape(long long len) {
    if (len == 0) return single_;
    auto& memo = span_[len];
    if (memo.empty()) memo = build_spanning(len);
    return memo;
  }

  std::vector<Arcs> build_spanning(long long len) {
    std::vector<Arcs> out;
    for (long long k = 1; k <= len; ++k) {
      auto first = rooted(k);
      auto rest = shifted(spanning_shape(len - k), k);
      for (const auto& f : first)
        for (const auto& r : rest) {
          Arcs arcs = f;
          arcs.insert(arcs.end(), r.begin(), r.end());
          out.push_back(std::move(arcs));
        }
    }
    return out;
  }

  std::vector<Arcs> single_{Arcs{}};
  std::map<long long, std::vector<Arcs>> span_, root_;
};

}  // namespace detail

inline GradedCollection noncrossing_trees() {
  return GradedCollection(
      "nct",
      [](std::size_t n) {
        std::vector<Obj> out;
        if (n == 0) return out;
        detail::NCTEnumerator en;
        for (const auto& arcs : en.rooted_at(1, static_cast<long long>(n) + 1)) {
          NCTree t;
          t.size = static_cast<long long>(n);
          t.arcs.insert(arcs.begin(), arcs.end());
          out.push_back(t.to_obj());
        }
        return out;
      },
      [](const Obj& o) -> long long { return NCTree::from_obj(o).size; });
}

// c o_i d glues the base of d onto the edge (i, i+1) of c; the glued edge keeps
// the status it had in c.
inline NCTree nct_compose(const NCTree& c, std::size_t i, const NCTree& d) {
  long long n = c.size, m = d.size, ii = static_cast<long long>(i);
  if (ii < 1 || ii > n) throw std::out_of_range("partial composition index " + std::to_string(i) + " outside [1, " + std::to_string(n) + "]");
  NCTree r;
  r.size = n + m - 1;
  auto shift = [&](long long v) { return v > ii ? v + m - 1 : v; };
  for (const auto& [x, y] : c.arcs) r.arcs.emplace(shift(x), shift(y));
  for (const auto& [x, y] : d.arcs)
    if (!(x == 1 && y == m + 1)) r.arcs.emplace(x + ii - 1, y + ii - 1);
  return r;
}

inline Operad nct_operad() {
  auto compose = [](const Obj& x, std::size_t i, const Obj& y) {
    return ObjPoly(nct_compose(NCTree::from_obj(x), i, NCTree::from_obj(y)).to_obj());
  };
  NCTree unit;
  unit.size = 1;
  unit.arcs = {{1, 2}};
  return Operad("nct", noncrossing_trees(), compose, unit.to_obj());
}

}  // namespace operadica
