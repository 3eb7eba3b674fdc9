#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "operadica/collections/families.hpp"
#include "operadica/collections/graded_collection.hpp"

namespace operadica {

template <typename X>
struct TerminationVerdict {
  bool terminating = false;
  std::size_t bound = 0;       // checked for every index up to this one
  bool unconditional = false;  // holds at every index
  std::vector<X> cycle;        // x0 -> x1 -> ... -> x0 when not terminating
  std::string reason;
};

template <typename X, typename NF = X>
struct ConfluenceVerdict {
  bool confluent = true;
  std::optional<X> witness;
  std::vector<NF> normal_forms;  // distinct normal forms reachable from the witness
  std::string method;
};

namespace detail {

// Iterative three-color DFS over a finite graph; returns a cycle if one is reachable from the roots.
template <typename X, typename Succ>
std::vector<X> find_cycle(const std::vector<X>& roots, Succ succ) {
  enum Color { grey, black };
  std::map<X, Color> color;
  for (const auto& root : roots) {
    if (color.count(root)) continue;
    std::vector<std::pair<X, std::vector<X>>> stack;
    std::vector<std::size_t> next;
    color[root] = grey;
    stack.emplace_back(root, succ(root));
    next.push_back(0);
    while (!stack.empty()) {
      auto& [x, out] = stack.back();
      if (next.back() == out.size()) {
        color[x] = black;
        stack.pop_back();
        next.pop_back();
        continue;
      }
      X y = out[next.back()++];
      auto it = color.find(y);
      if (it == color.end()) {
        color[y] = grey;
        auto ys = succ(y);
        stack.emplace_back(y, std::move(ys));
        next.push_back(0);
      } else if (it->second == grey) {
        std::vector<X> cyc;
        std::size_t k = stack.size();
        while (k-- > 0) {
          cyc.push_back(stack[k].first);
          if (stack[k].first == y) break;
        }
        std::reverse(cyc.begin(), cyc.end());
        return cyc;
      }
    }
  }
  return {};
}

}  // namespace detail

// Rewrite system on a graded collection given by its one-step successor function.
// Successors must have the same size as their source.
class ObjRewriteSystem {
 public:
  using Step = std::function<std::vector<Obj>(const Obj&)>;

  ObjRewriteSystem(GradedCollection carrier, Step step) : carrier_(std::move(carrier)), step_(std::move(step)) {}

  const GradedCollection& carrier() const { return carrier_; }

  std::vector<Obj> one_step(const Obj& x) const {
    auto out = step_(x);
    long long n = carrier_.size_of(x);
    for (const auto& y : out)
      if (carrier_.size_of(y) != n)
        throw std::logic_error("rewriting changed the size of " + x.str() + " into " + y.str());
    return out;
  }

  bool is_normal(const Obj& x) const { return step_(x).empty(); }

  // Follows the first successor until none is left.
  Obj normal_form(const Obj& x, std::size_t budget = 100000) const {
    Obj cur = x;
    for (std::size_t k = 0; k <= budget; ++k) {
      auto out = step_(cur);
      if (out.empty()) return cur;
      cur = out.front();
    }
    throw std::runtime_error("possible nontermination: no normal form of " + x.str() + " within " +
                             std::to_string(budget) + " steps");
  }

  // Rewriting preserves size and each size class is finite, so termination up to
  // `bound` is acyclicity of the rewriting graph restricted to those sizes.
  TerminationVerdict<Obj> check_termination(std::size_t bound) const {
    TerminationVerdict<Obj> v;
    v.bound = bound;
    for (std::size_t n = 0; n <= bound; ++n) {
      auto cyc = detail::find_cycle<Obj>(carrier_.enumerate_ref(n), [&](const Obj& x) { return step_(x); });
      if (!cyc.empty()) {
        v.cycle = std::move(cyc);
        v.reason = "rewriting graph has a cycle at size " + std::to_string(n);
        return v;
      }
    }
    v.terminating = true;
    v.reason = "rewriting graph acyclic up to size " + std::to_string(bound);
    return v;
  }

  std::set<Obj> reachable_normal_forms(const Obj& x) const {
    std::set<Obj> seen{x}, nfs;
    std::vector<Obj> todo{x};
    while (!todo.empty()) {
      Obj y = todo.back();
      todo.pop_back();
      auto out = step_(y);
      if (out.empty()) nfs.insert(y);
      for (const auto& z : out)
        if (seen.insert(z).second) todo.push_back(z);
    }
    return nfs;
  }

  // Under termination, confluence is uniqueness of the reachable normal form. The
  // witness is the smallest object (size, then canonical order) with several.
  ConfluenceVerdict<Obj> check_confluence(std::size_t bound) const {
    auto term = check_termination(bound);
    if (!term.terminating)
      throw std::logic_error("confluence check needs termination up to size " + std::to_string(bound) +
                             ": " + term.reason);
    ConfluenceVerdict<Obj> v;
    v.method = "unique normal form for every object of size <= " + std::to_string(bound);
    for (std::size_t n = 0; n <= bound; ++n)
      for (const auto& x : carrier_.enumerate_ref(n)) {
        auto nfs = reachable_normal_forms(x);
        if (nfs.size() > 1) {
          v.confluent = false;
          v.witness = x;
          v.normal_forms.assign(nfs.begin(), nfs.end());
          return v;
        }
      }
    return v;
  }

  // Is the branching pair (y, z) joinable, i.e. do they reach a common object?
  bool joinable(const Obj& y, const Obj& z) const {
    auto reach = [&](const Obj& s) {
      std::set<Obj> seen{s};
      std::vector<Obj> todo{s};
      while (!todo.empty()) {
        Obj a = todo.back();
        todo.pop_back();
        for (const auto& b : step_(a))
          if (seen.insert(b).second) todo.push_back(b);
      }
      return seen;
    };
    auto ry = reach(y), rz = reach(z);
    for (const auto& a : ry)
      if (rz.count(a)) return true;
    return false;
  }

  // Graph of everything reachable from x, in DOT syntax.
  std::string graph_dot(const Obj& x) const {
    std::set<Obj> seen{x};
    std::vector<Obj> order{x};
    std::string edges;
    for (std::size_t k = 0; k < order.size(); ++k) {
      for (const auto& y : step_(order[k])) {
        edges += "  \"" + order[k].str() + "\" -> \"" + y.str() + "\";\n";
        if (seen.insert(y).second) order.push_back(y);
      }
    }
    std::string out = "digraph rewriting {\n";
    for (const auto& o : order) out += "  \"" + o.str() + "\";\n";
    return out + edges + "}\n";
  }

 private:
  GradedCollection carrier_;
  Step step_;
};

// Closure of factor rules on tagged sequences (tag x1 ... xn): any occurrence of a
// rule's left factor is replaced by its right factor. Successors are listed by rule,
// then by position.
inline ObjRewriteSystem factor_rewrite_system(GradedCollection carrier, const std::string& tag,
                                              std::vector<std::pair<Obj::List, Obj::List>> rules) {
  auto step = [tag, rules](const Obj& x) {
    if (!x.has_tag(tag)) throw std::invalid_argument("expected a (" + tag + " ...) object, got " + x.str());
    const auto& items = x.items();
    std::vector<Obj> out;
    for (const auto& [lhs, rhs] : rules) {
      if (lhs.empty()) throw std::invalid_argument("factor rule with empty left side");
      for (std::size_t p = 1; p + lhs.size() <= items.size(); ++p) {
        if (!std::equal(lhs.begin(), lhs.end(), items.begin() + static_cast<long>(p))) continue;
        Obj::List w(items.begin(), items.begin() + static_cast<long>(p));
        w.insert(w.end(), rhs.begin(), rhs.end());
        w.insert(w.end(), items.begin() + static_cast<long>(p + lhs.size()), items.end());
        out.push_back(Obj::list(std::move(w)));
      }
    }
    return out;
  };
  return ObjRewriteSystem(std::move(carrier), step);
}

inline Obj::List letters(const std::string& s) {
  Obj::List out;
  for (char c : s) out.push_back(Obj::symbol(std::string(1, c)));
  return out;
}

inline Obj word_obj(const std::string& s) { return Obj::tagged_list("word", letters(s)); }

inline std::string word_str(const Obj& w) {
  std::string s;
  for (std::size_t i = 1; i < w.length(); ++i) s += w[i].as_symbol();
  return s;
}

// Word rewriting on {a, b}* closed under concatenation, e.g. {"aba", "bab"}.
inline ObjRewriteSystem word_rewrite_system(const std::vector<std::pair<std::string, std::string>>& rules,
                                            const std::vector<std::string>& alphabet = {"a", "b"}) {
  std::vector<std::pair<Obj::List, Obj::List>> rs;
  for (const auto& [l, r] : rules) {
    if (l.size() != r.size()) throw std::invalid_argument("word rule " + l + " -> " + r + " changes the length");
    rs.emplace_back(letters(l), letters(r));
  }
  return factor_rewrite_system(words(alphabet), "word", rs);
}

// u x -> x u for every word u (possibly empty) and letter x: the last letter moves to
// the front. Every nonempty word has exactly one successor.
inline ObjRewriteSystem rotation_word_system(const std::vector<std::string>& alphabet = {"a", "b"}) {
  auto step = [](const Obj& x) {
    const auto& items = x.items();
    if (items.size() <= 1) return std::vector<Obj>{};
    Obj::List w{items[0], items.back()};
    w.insert(w.end(), items.begin() + 1, items.end() - 1);
    return std::vector<Obj>{Obj::list(std::move(w))};
  };
  return ObjRewriteSystem(words(alphabet), step);
}

// On compositions: a part equal to 3 (a horizontal ribbon row of three boxes) becomes
// 1, 1, 1 (a vertical column).
inline ObjRewriteSystem ribbon_system() {
  return factor_rewrite_system(compositions(), "comp", {{Obj::List{Obj(3)}, Obj::List{Obj(1), Obj(1), Obj(1)}}});
}

}  // namespace operadica
