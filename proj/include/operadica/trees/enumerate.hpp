#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "operadica/collections/families.hpp"
#include "operadica/trees/tree.hpp"

namespace operadica {

enum class TreeGrading { degree, arity };

namespace detail {

// Calls f with every way of choosing one tree per slot, slot k drawn from pools[k].
inline void for_each_choice(const std::vector<const std::vector<Tree>*>& pools,
                            const std::function<void(const std::vector<Tree>&)>& f) {
  std::vector<Tree> pick(pools.size());
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == pools.size()) {
      f(pick);
      return;
    }
    for (const auto& t : *pools[k]) {
      pick[k] = t;
      rec(k + 1);
    }
  };
  rec(0);
}

class TreeEnumerator {
 public:
  TreeEnumerator(const Signature& sig, TreeGrading by) : sig_(sig), by_(by) {
    if (by == TreeGrading::arity && sig.has_unary())
      throw std::domain_error(
          "enumeration by arity needs a signature without arity-1 generators: "
          "otherwise there are infinitely many syntax trees of each arity");
  }

  const std::vector<Tree>& level(std::size_t n) {
    auto it = memo_.find(n);
    if (it != memo_.end()) return it->second;
    std::vector<Tree> out;
    if (by_ == TreeGrading::degree) {
      if (n == 0) out.push_back(Tree::leaf());
      else
        for (const auto& g : sig_.generators())
          for_each_split(n - 1, g.arity, 0, g.name, out);
    } else {
      if (n == 1) out.push_back(Tree::leaf());
      else if (n >= 2)
        for (const auto& g : sig_.generators())
          if (g.arity <= n) for_each_split(n, g.arity, 1, g.name, out);
    }
    std::sort(out.begin(), out.end());
    return memo_.emplace(n, std::move(out)).first->second;
  }

 private:
  // Distributes total over k children, each of size at least lo.
  void for_each_split(std::size_t total, std::size_t k, std::size_t lo, const std::string& sym,
                      std::vector<Tree>& out) {
    if (total < k * lo) return;
    std::vector<std::size_t> parts(k, lo);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t left) {
      if (pos + 1 == k) {
        parts[pos] = left;
        std::vector<const std::vector<Tree>*> pools;
        for (std::size_t p : parts) {
          const auto& lv = level(p);
          if (lv.empty()) return;
          pools.push_back(&lv);
        }
        for_each_choice(pools, [&](const std::vector<Tree>& kids) { out.push_back(Tree::node(sym, kids)); });
        return;
      }
      for (std::size_t s = lo; s + lo * (k - pos - 1) <= left; ++s) {
        parts[pos] = s;
        rec(pos + 1, left - s);
      }
    };
    rec(0, total);
  }

  Signature sig_;
  TreeGrading by_;
  std::map<std::size_t, std::vector<Tree>> memo_;
};

}  // namespace detail

// All syntax trees over sig of the given degree or arity, in canonical order.
inline std::vector<Tree> enumerate_trees(const Signature& sig, TreeGrading by, std::size_t n) {
  if (sig.size() == 0) throw std::invalid_argument("enumeration needs a nonempty signature");
  detail::TreeEnumerator e(sig, by);
  return e.level(n);
}

// Trees of every degree up to max_degree.
inline std::vector<Tree> enumerate_trees_up_to_degree(const Signature& sig, std::size_t max_degree) {
  detail::TreeEnumerator e(sig, TreeGrading::degree);
  std::vector<Tree> out;
  for (std::size_t d = 0; d <= max_degree; ++d) {
    const auto& lv = e.level(d);
    out.insert(out.end(), lv.begin(), lv.end());
  }
  return out;
}

// The planar-to-binary bijection on the planar_trees / binary_trees_leaf encodings:
// a node with children t1..tk goes to a binary node whose left child is phi(t1) and
// whose right child is phi of the node with children t2..tk (a leaf when k = 1).
inline Obj rotation_bijection(const Obj& t) {
  if (!t.is_list() || t.length() < 1 || !t[0].is_symbol())
    throw std::invalid_argument("not a planar tree: " + t.str());
  if (t.has_tag("leaf")) return detail::leaf_obj();
  if (!t.has_tag("node") || t.length() < 2) throw std::invalid_argument("not a planar tree: " + t.str());
  const auto& items = t.items();
  Obj left = rotation_bijection(items[1]);
  Obj right = items.size() == 2
                  ? detail::leaf_obj()
                  : rotation_bijection(Obj::tagged_list("node", Obj::List(items.begin() + 2, items.end())));
  return Obj::tagged("node", left, right);
}

}  // namespace operadica
