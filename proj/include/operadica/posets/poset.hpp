#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "operadica/collections/families.hpp"
#include "operadica/collections/operations.hpp"
#include "operadica/collections/poly.hpp"
#include "operadica/kernel/matrix.hpp"
#include "operadica/rewriting/tree_rewriting.hpp"

namespace operadica {

using ObjPair = std::pair<Obj, Obj>;

// A poset on a graded collection, given by its upper covers; only objects of equal
// size are comparable. Copies share one closure memo.
class Poset {
 public:
  using Covers = std::function<std::vector<Obj>(const Obj&)>;

  Poset(std::string name, GradedCollection carrier, Covers upper_covers)
      : impl_(std::make_shared<Impl>()) {
    impl_->name = std::move(name);
    impl_->carrier = std::move(carrier);
    impl_->covers = std::move(upper_covers);
  }

  const std::string& name() const { return impl_->name; }
  const GradedCollection& carrier() const { return impl_->carrier; }
  const std::vector<Obj>& elements(std::size_t n) const { return impl_->carrier.enumerate_ref(n); }
  std::vector<Obj> upper_covers(const Obj& x) const { return impl_->covers(x); }

  std::vector<ObjPair> covers(std::size_t n) const {
    std::vector<ObjPair> out;
    for (const auto& x : elements(n))
      for (const auto& y : impl_->covers(x)) out.emplace_back(x, y);
    return out;
  }

  // Reflexive-transitive closure of the covers at size n: x -> {y : x <= y}.
  const std::map<Obj, std::set<Obj>>& order(std::size_t n) const {
    {
      std::lock_guard<std::mutex> lock(impl_->mu);
      auto it = impl_->closure.find(n);
      if (it != impl_->closure.end()) return it->second;
    }
    const auto& elems = elements(n);
    auto cyc = detail::find_cycle<Obj>(elems, [&](const Obj& x) { return impl_->covers(x); });
    if (!cyc.empty()) throw std::domain_error(name() + ": not a partial order (cycle through " + cyc[0].str() + ")");
    std::map<Obj, std::set<Obj>> up;
    std::function<const std::set<Obj>&(const Obj&)> visit = [&](const Obj& x) -> const std::set<Obj>& {
      auto it = up.find(x);
      if (it != up.end()) return it->second;
      std::set<Obj> s{x};
      for (const auto& y : impl_->covers(x)) {
        const auto& sy = visit(y);
        s.insert(sy.begin(), sy.end());
      }
      return up.emplace(x, std::move(s)).first->second;
    };
    for (const auto& x : elems) visit(x);
    std::lock_guard<std::mutex> lock(impl_->mu);
    return impl_->closure.try_emplace(n, std::move(up)).first->second;
  }

  std::set<ObjPair> order_pairs(std::size_t n) const {
    std::set<ObjPair> out;
    for (const auto& [x, ys] : order(n))
      for (const auto& y : ys) out.emplace(x, y);
    return out;
  }

  bool leq(const Obj& x, const Obj& y) const {
    long long n = carrier().size_of(x);
    if (n != carrier().size_of(y)) return false;
    const auto& ord = order(static_cast<std::size_t>(n));
    auto it = ord.find(x);
    return it != ord.end() && it->second.count(y) > 0;
  }

 private:
  struct Impl {
    std::string name;
    GradedCollection carrier{"", {}, {}};
    Covers covers;
    std::mutex mu;
    std::map<std::size_t, std::map<Obj, std::set<Obj>>> closure;
  };
  std::shared_ptr<Impl> impl_;
};

inline std::set<ObjPair> order_closure(const Poset& p, std::size_t n) { return p.order_pairs(n); }

// Element of the incidence algebra of p at size n: a combination of pairs x <= y.
struct IncidencePoly {
  std::string poset;
  std::size_t size = 0;
  Poly<ObjPair> f;

  Scalar operator()(const Obj& x, const Obj& y) const { return f.coefficient({x, y}); }
  bool operator==(const IncidencePoly& o) const { return poset == o.poset && size == o.size && f == o.f; }
};

inline IncidencePoly incidence_zeta(const Poset& p, std::size_t n) {
  IncidencePoly z{p.name(), n, {}};
  for (const auto& pr : p.order_pairs(n)) z.f.add(pr, 1);
  return z;
}

inline IncidencePoly incidence_unit(const Poset& p, std::size_t n) {
  IncidencePoly u{p.name(), n, {}};
  for (const auto& x : p.elements(n)) u.f.add({x, x}, 1);
  return u;
}

// (x, y) * (y', z) = (x, z) when y = y', else 0; extended bilinearly.
inline IncidencePoly incidence_product(const IncidencePoly& a, const IncidencePoly& b) {
  if (a.poset != b.poset || a.size != b.size)
    throw std::invalid_argument("incidence product of elements of different posets (" + a.poset + " size " +
                                std::to_string(a.size) + ", " + b.poset + " size " + std::to_string(b.size) + ")");
  std::map<Obj, std::vector<std::pair<Obj, Scalar>>> by_first;
  for (const auto& [pr, c] : b.f) by_first[pr.first].emplace_back(pr.second, c);
  IncidencePoly r{a.poset, a.size, {}};
  for (const auto& [pr, c] : a.f) {
    auto it = by_first.find(pr.second);
    if (it == by_first.end()) continue;
    for (const auto& [z, d] : it->second) {
      Scalar v = c * d;
      r.f.add({pr.first, z}, v);
    }
  }
  return r;
}

// mu(x, x) = 1 and mu(x, y) = -sum_{x <= z < y} mu(x, z).
inline IncidencePoly mobius(const Poset& p, std::size_t n) {
  const auto& ord = p.order(n);
  IncidencePoly m{p.name(), n, {}};
  for (const auto& [x, ups] : ord) {
    // Visit the upper set of x along a linear extension: z before y whenever z < y.
    std::vector<Obj> lin(ups.begin(), ups.end());
    std::map<Obj, std::size_t> below;
    for (const auto& y : lin) {
      std::size_t k = 0;
      for (const auto& z : lin)
        if (ord.at(z).count(y)) ++k;
      below[y] = k;
    }
    std::sort(lin.begin(), lin.end(), [&](const Obj& a, const Obj& b) {
      return below[a] != below[b] ? below[a] < below[b] : a < b;
    });
    std::map<Obj, Scalar> mu;
    for (const auto& y : lin) {
      Scalar v = 0;
      if (y == x) v = 1;
      else
        for (const auto& [z, mz] : mu)
          if (ord.at(z).count(y)) v -= mz;
      mu[y] = v;
      m.f.add({x, y}, v);
    }
  }
  return m;
}

struct BasisChange {
  std::vector<Obj> order;     // row/column indexing
  RationalMatrix forward;     // B_x = sum_{x <= y} y
  RationalMatrix inverse;     // x = sum_{x <= y} mu(x, y) B_y
};

inline BasisChange basis_change_matrix(const Poset& p, std::size_t n) {
  BasisChange bc;
  bc.order = p.elements(n);
  std::map<Obj, std::size_t> idx;
  for (std::size_t i = 0; i < bc.order.size(); ++i) idx[bc.order[i]] = i;
  const std::size_t d = bc.order.size();
  bc.forward = RationalMatrix{d, std::vector<SparseRow>(d)};
  bc.inverse = RationalMatrix{d, std::vector<SparseRow>(d)};
  for (const auto& [x, ups] : p.order(n))
    for (const auto& y : ups) bc.forward.rows[idx[x]][idx[y]] = 1;
  for (const auto& [pr, c] : mobius(p, n).f) bc.inverse.rows[idx[pr.first]][idx[pr.second]] = c;
  return bc;
}

inline Poset dual_poset(const Poset& p) {
  auto covers = [p](const Obj& y) {
    std::vector<Obj> out;
    long long n = p.carrier().size_of(y);
    for (const auto& x : p.elements(static_cast<std::size_t>(n)))
      for (const auto& z : p.upper_covers(x))
        if (z == y) out.push_back(x);
    return out;
  };
  return Poset("dual(" + p.name() + ")", p.carrier(), covers);
}

// Product order on (had x y) pairs of equal size.
inline Poset hadamard_poset(const Poset& p, const Poset& q) {
  auto carrier = combine_binary(BinaryKind::hadamard, p.carrier(), q.carrier());
  auto covers = [p, q](const Obj& xy) {
    std::vector<Obj> out;
    for (const auto& x2 : p.upper_covers(xy[1])) out.push_back(Obj::tagged("had", x2, xy[2]));
    for (const auto& y2 : q.upper_covers(xy[2])) out.push_back(Obj::tagged("had", xy[1], y2));
    return out;
  };
  return Poset("hadamard(" + p.name() + "," + q.name() + ")", carrier, covers);
}

// (leaf) / (node l r) binary trees <-> syntax trees over one binary symbol.
inline Tree binary_obj_to_tree(const Obj& o, const std::string& sym = "b") {
  if (o.has_tag("leaf")) return Tree::leaf();
  if (!o.has_tag("node") || o.length() != 3) throw std::invalid_argument("not a binary tree: " + o.str());
  return Tree::node(sym, {binary_obj_to_tree(o[1], sym), binary_obj_to_tree(o[2], sym)});
}

inline Obj tree_to_binary_obj(const Tree& t) {
  if (t.is_leaf()) return detail::leaf_obj();
  if (t.root_arity() != 2) throw std::invalid_argument("not a binary tree: " + t.str());
  return Obj::tagged("node", tree_to_binary_obj(t.children()[0]), tree_to_binary_obj(t.children()[1]));
}

inline Poset cube_poset() {
  // Covers merge two adjacent parts.
  auto covers = [](const Obj& c) {
    auto parts = c.int_args();
    std::vector<Obj> out;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
      std::vector<long long> m(parts.begin(), parts.begin() + static_cast<long>(i));
      m.push_back(parts[i] + parts[i + 1]);
      m.insert(m.end(), parts.begin() + static_cast<long>(i + 2), parts.end());
      out.push_back(Obj::int_list("comp", m));
    }
    return out;
  };
  return Poset("cube", compositions(), covers);
}

// Covers are the one-step rewritings of the right rotation rule on syntax trees.
inline Poset tamari_poset() {
  auto rot = std::make_shared<TreeRewriteSystem>(rotation_system());
  auto covers = [rot](const Obj& o) {
    std::vector<Obj> out;
    for (const auto& t : rot->successors(binary_obj_to_tree(o))) out.push_back(tree_to_binary_obj(t));
    return out;
  };
  return Poset("tamari", binary_trees_node(), covers);
}

// u ab v < u ba v for a < b.
inline Poset right_weak_poset() {
  auto covers = [](const Obj& perm) {
    auto w = perm.int_args();
    std::vector<Obj> out;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i] < w[i + 1]) {
        auto v = w;
        std::swap(v[i], v[i + 1]);
        out.push_back(Obj::int_list("perm", v));
      }
    return out;
  };
  return Poset("right_weak", permutations(), covers);
}

inline Poset builtin_poset(const std::string& name) {
  if (name == "cube") return cube_poset();
  if (name == "tamari") return tamari_poset();
  if (name == "right_weak" || name == "right-weak") return right_weak_poset();
  throw std::invalid_argument("unknown poset '" + name + "' (expected cube, tamari or right_weak)");
}

}  // namespace operadica
