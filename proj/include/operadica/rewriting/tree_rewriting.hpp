#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "operadica/collections/poly.hpp"
#include "operadica/rewriting/generic.hpp"
#include "operadica/trees/enumerate.hpp"
#include "operadica/trees/grafting.hpp"

namespace operadica {

using TreePoly = Poly<Tree>;

inline std::string tree_poly_str(const TreePoly& p) {
  return p.str([](const Tree& t) { return t.str(); });
}

enum class RuleMode { set, linear };

// lhs -> rhs. In set mode rhs is a single tree with coefficient 1.
struct TreeRule {
  Tree lhs;
  TreePoly rhs;
};

struct Redex {
  std::size_t rule = 0;
  Address at;
  std::vector<Tree> holes;  // subtrees matched by the leaves of the lhs
};

struct InvariantVerdict {
  bool holds = true;
  std::size_t bound = 0;
  std::optional<std::pair<Tree, Tree>> counterexample;  // before, after
  std::string message;
};

// Closure of a finite set of rules on syntax trees: a rule applies at any address of
// any tree, with arbitrary subtrees under the leaves of its left side.
class TreeRewriteSystem {
 public:
  using Invariant = std::function<std::vector<long long>(const Tree&)>;

  TreeRewriteSystem(Signature sig, RuleMode mode) : sig_(std::move(sig)), mode_(mode) {}

  void add_rule(const Tree& lhs, const TreePoly& rhs) {
    if (lhs.is_leaf()) throw std::invalid_argument("a rule cannot rewrite the leaf");
    sig_.check(lhs);
    if (mode_ == RuleMode::set && !rhs.is_basis_element())
      throw std::invalid_argument("set-mode rule " + lhs.str() + " needs a single right-hand tree");
    for (const auto& [t, c] : rhs) {
      sig_.check(t);
      if (t.arity() != lhs.arity())
        throw std::invalid_argument("rule " + lhs.str() + " -> " + t.str() + " changes the arity");
      if (t == lhs) throw std::invalid_argument("rule " + lhs.str() + " has its left side on the right");
    }
    rules_.push_back({lhs, rhs});
  }
  void add_rule(const Tree& lhs, const Tree& rhs) { add_rule(lhs, TreePoly(rhs)); }

  const Signature& signature() const { return sig_; }
  RuleMode mode() const { return mode_; }
  const std::vector<TreeRule>& rules() const { return rules_; }

  // Maximal degree of a left side.
  std::size_t degree() const {
    std::size_t l = 0;
    for (const auto& r : rules_) l = std::max(l, r.lhs.degree());
    return l;
  }

  Tree apply(const Tree& t, const Redex& r, const Tree& replacement) const {
    return replace_at(t, r.at, graft_complete(replacement, r.holes));
  }
  TreePoly apply(const Tree& t, const Redex& r) const {
    TreePoly out;
    for (const auto& [s, c] : rules_[r.rule].rhs) out.add(apply(t, r, s), c);
    return out;
  }

  // Every redex, ordered by rule index then address.
  std::vector<Redex> redexes(const Tree& t) const {
    std::vector<Redex> out;
    for (std::size_t k = 0; k < rules_.size(); ++k)
      for (auto& u : occurrences(t, rules_[k].lhs)) {
        Redex r{k, std::move(u), {}};
        match_at_root(subtree_at(t, r.at), rules_[k].lhs, &r.holes);
        out.push_back(std::move(r));
      }
    return out;
  }

  std::vector<TreePoly> one_step(const Tree& t) const {
    std::vector<TreePoly> out;
    for (const auto& r : redexes(t)) out.push_back(apply(t, r));
    return out;
  }

  // Trees appearing in some one-step rewriting of t (the edges of the rewriting graph).
  std::vector<Tree> successors(const Tree& t) const {
    std::vector<Tree> out;
    for (const auto& p : one_step(t))
      for (const auto& [s, c] : p) out.push_back(s);
    return out;
  }

  bool root_reducible(const Tree& t) const {
    for (const auto& r : rules_)
      if (match_at_root(t, r.lhs)) return true;
    return false;
  }

  bool is_normal(const Tree& t) const {
    if (t.is_leaf()) return true;
    if (root_reducible(t)) return false;
    for (const auto& c : t.children())
      if (!is_normal(c)) return false;
    return true;
  }

  // Leftmost-innermost redex: children are searched left to right before the root.
  std::optional<Redex> innermost_redex(const Tree& t) const {
    Address u;
    return innermost_redex(t, u);
  }

  Tree normal_form_tree(const Tree& t, std::size_t budget = 100000) const {
    if (mode_ != RuleMode::set) throw std::logic_error("normal_form_tree needs a set-mode system");
    Tree cur = t;
    for (std::size_t k = 0; k <= budget; ++k) {
      auto r = innermost_redex(cur);
      if (!r) return cur;
      cur = apply(cur, *r, rules_[r->rule].rhs.sole_key());
    }
    throw std::runtime_error("possible nontermination: no normal form of " + t.str() + " within " +
                             std::to_string(budget) + " steps");
  }

  // Repeatedly rewrites the largest reducible tree of the support (at its leftmost-innermost redex).
  TreePoly normal_form(const TreePoly& p, std::size_t budget = 100000) const {
    TreePoly cur = p;
    std::set<Tree> normal;
    for (std::size_t k = 0; k <= budget; ++k) {
      const Tree* target = nullptr;
      for (auto it = cur.terms().rbegin(); it != cur.terms().rend(); ++it) {
        if (normal.count(it->first)) continue;
        if (is_normal(it->first)) {
          normal.insert(it->first);
          continue;
        }
        target = &it->first;
        break;
      }
      if (!target) return cur;
      Tree t = *target;
      Scalar c = cur.coefficient(t);
      auto r = innermost_redex(t);
      cur.erase(t);
      cur.add(apply(t, *r), c);
    }
    throw std::runtime_error("possible nontermination: no normal form of " + tree_poly_str(p) + " within " +
                             std::to_string(budget) + " steps");
  }
  TreePoly normal_form(const Tree& t, std::size_t budget = 100000) const { return normal_form(TreePoly(t), budget); }

  // Normal forms of arity n, built bottom-up: a tree is normal iff its children are
  // normal and no left side matches at its root.
  std::vector<Tree> normal_forms_of_arity(std::size_t n) const {
    if (sig_.has_unary()) throw std::domain_error("normal forms by arity need a signature without unary generators");
    std::map<std::size_t, std::vector<Tree>> memo;
    return nf_level(n, memo);
  }

  // Termination up to arity `bound`: acyclicity of the rewriting graph on every arity
  // class (finite since there are no unary generators).
  TerminationVerdict<Tree> check_termination(std::size_t bound) const {
    if (sig_.has_unary())
      throw std::domain_error("termination check by arity needs a signature without unary generators");
    TerminationVerdict<Tree> v;
    v.bound = bound;
    for (std::size_t n = 1; n <= bound; ++n) {
      auto trees = enumerate_trees(sig_, TreeGrading::arity, n);
      auto cyc = detail::find_cycle<Tree>(trees, [&](const Tree& t) { return successors(t); });
      if (!cyc.empty()) {
        v.cycle = std::move(cyc);
        v.reason = "rewriting graph has a cycle at arity " + std::to_string(n);
        return v;
      }
    }
    v.terminating = true;
    v.reason = "rewriting graph acyclic up to arity " + std::to_string(bound);
    return v;
  }

  // Unconditional certificate when every rule strictly raises the degree: arity is
  // preserved and bounds the degree once there are no unary generators.
  std::optional<TerminationVerdict<Tree>> degree_certificate() const {
    if (sig_.has_unary()) return std::nullopt;
    for (const auto& r : rules_)
      for (const auto& [s, c] : r.rhs)
        if (s.degree() <= r.lhs.degree()) return std::nullopt;
    TerminationVerdict<Tree> v;
    v.terminating = true;
    v.unconditional = true;
    v.reason = "every rule raises the degree, which is bounded by the arity";
    return v;
  }

  TerminationVerdict<Tree> certify_termination(std::size_t bound) const {
    if (auto c = degree_certificate()) return *c;
    return check_termination(bound);
  }

  // theta must increase strictly along every rule, and inside every context of total
  // degree <= bound (the compatibility inequality, checked exhaustively up to bound).
  InvariantVerdict check_invariant(const Invariant& theta, std::size_t bound) const {
    InvariantVerdict v;
    v.bound = bound;
    auto fail = [&](const Tree& a, const Tree& b, const std::string& where) {
      v.holds = false;
      v.counterexample = std::make_pair(a, b);
      v.message = where + ": theta(" + a.str() + ") is not below theta(" + b.str() + ")";
      return v;
    };
    for (const auto& r : rules_)
      for (const auto& [s, c] : r.rhs)
        if (!(theta(r.lhs) < theta(s))) return fail(r.lhs, s, "rule");
    auto small = enumerate_trees_up_to_degree(sig_, bound);
    for (const auto& r : rules_) {
      std::size_t m = r.lhs.arity();
      for (const auto& t : small) {
        if (t.degree() > bound) continue;
        std::vector<const Tree*> rs(m);
        std::function<std::optional<InvariantVerdict>(std::size_t, std::size_t)> rec =
            [&](std::size_t k, std::size_t left) -> std::optional<InvariantVerdict> {
          if (k == m) {
            std::vector<Tree> filler;
            for (auto* p : rs) filler.push_back(*p);
            Tree before_sub = graft_complete(r.lhs, filler);
            for (std::size_t i = 1; i <= t.arity(); ++i) {
              Tree before = graft_partial(t, i, before_sub);
              for (const auto& [s, c] : r.rhs) {
                Tree after = graft_context(t, i, s, filler);
                if (!(theta(before) < theta(after))) return fail(before, after, "context");
              }
            }
            return std::nullopt;
          }
          for (const auto& x : small) {
            if (x.degree() > left) continue;
            rs[k] = &x;
            if (auto bad = rec(k + 1, left - x.degree())) return bad;
          }
          return std::nullopt;
        };
        if (auto bad = rec(0, bound - t.degree())) return *bad;
      }
    }
    v.message = "certified up to total context degree " + std::to_string(bound);
    return v;
  }

  // Confluence by the bounded criterion: with finitely many rules of degree at most l
  // and termination, it suffices that every tree of degree <= 2l - 1 has one normal
  // form. Set mode counts the normal forms reachable in the rewriting graph; linear
  // mode compares the normal forms of all one-step rewritings of each tree.
  ConfluenceVerdict<Tree, TreePoly> check_confluence(const std::optional<TerminationVerdict<Tree>>& cert,
                                                     unsigned jobs = 1) const {
    std::size_t l = degree();
    ConfluenceVerdict<Tree, TreePoly> v;
    v.method = "every tree of degree <= " + std::to_string(l == 0 ? 0 : 2 * l - 1) + " has a unique normal form";
    if (l == 0) return v;
    std::vector<Tree> trees = enumerate_trees_up_to_degree(sig_, 2 * l - 1);
    std::size_t max_arity = 0;
    for (const auto& t : trees) max_arity = std::max(max_arity, t.arity());
    if (!cert || !cert->terminating || (!cert->unconditional && cert->bound < max_arity))
      throw std::logic_error("the confluence criterion needs a termination certificate up to arity " +
                             std::to_string(max_arity));
    std::sort(trees.begin(), trees.end());

    std::atomic<std::size_t> first_bad{trees.size()};
    std::mutex mu;
    std::map<std::size_t, std::vector<TreePoly>> found;
    auto work = [&](std::size_t start, std::size_t stride) {
      for (std::size_t k = start; k < trees.size() && k < first_bad.load(); k += stride) {
        auto nfs = distinct_normal_forms(trees[k]);
        if (nfs.size() > 1) {
          std::lock_guard<std::mutex> lock(mu);
          found[k] = std::move(nfs);
          std::size_t cur = first_bad.load();
          while (k < cur && !first_bad.compare_exchange_weak(cur, k)) {
          }
        }
      }
    };
    jobs = std::max(1u, jobs);
    if (jobs == 1) work(0, 1);
    else {
      std::vector<std::thread> pool;
      for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work, j, jobs);
      for (auto& th : pool) th.join();
    }
    if (!found.empty()) {
      auto& [k, nfs] = *found.begin();
      v.confluent = false;
      v.witness = trees[k];
      v.normal_forms = nfs;
    }
    return v;
  }

  // Distinct normal forms reachable from t (set mode) or of its one-step rewritings (linear mode).
  std::vector<TreePoly> distinct_normal_forms(const Tree& t) const {
    std::set<TreePoly> nfs;
    if (mode_ == RuleMode::set) {
      std::set<Tree> seen{t};
      std::vector<Tree> todo{t};
      while (!todo.empty()) {
        Tree x = todo.back();
        todo.pop_back();
        auto next = successors(x);
        if (next.empty()) nfs.insert(TreePoly(x));
        for (const auto& y : next)
          if (seen.insert(y).second) todo.push_back(y);
      }
    } else {
      auto steps = one_step(t);
      if (steps.empty()) nfs.insert(TreePoly(t));
      for (const auto& p : steps) nfs.insert(normal_form(p));
    }
    return {nfs.begin(), nfs.end()};
  }

  std::string graph_dot(const Tree& t) const {
    std::set<Tree> seen{t};
    std::vector<Tree> order{t};
    std::string edges;
    for (std::size_t k = 0; k < order.size(); ++k)
      for (const auto& y : successors(order[k])) {
        edges += "  \"" + order[k].str() + "\" -> \"" + y.str() + "\";\n";
        if (seen.insert(y).second) order.push_back(y);
      }
    std::string out = "digraph rewriting {\n";
    for (const auto& o : order) out += "  \"" + o.str() + "\";\n";
    return out + edges + "}\n";
  }

 private:
  std::optional<Redex> innermost_redex(const Tree& t, Address& u) const {
    if (t.is_leaf()) return std::nullopt;
    for (std::size_t k = 0; k < t.root_arity(); ++k) {
      u.push_back(static_cast<int>(k + 1));
      auto r = innermost_redex(t.children()[k], u);
      u.pop_back();
      if (r) return r;
    }
    for (std::size_t k = 0; k < rules_.size(); ++k) {
      Redex r{k, u, {}};
      if (match_at_root(t, rules_[k].lhs, &r.holes)) return r;
    }
    return std::nullopt;
  }

  const std::vector<Tree>& nf_level(std::size_t n, std::map<std::size_t, std::vector<Tree>>& memo) const {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    std::vector<Tree> out;
    if (n == 1) out.push_back(Tree::leaf());
    for (const auto& g : sig_.generators()) {
      if (g.arity > n || n < 2) continue;
      std::vector<std::size_t> parts(g.arity, 1);
      std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t left) {
        if (pos + 1 == g.arity) {
          parts[pos] = left;
          std::vector<const std::vector<Tree>*> pools;
          for (std::size_t p : parts) pools.push_back(&nf_level(p, memo));
          detail::for_each_choice(pools, [&](const std::vector<Tree>& kids) {
            Tree t = Tree::node(g.name, kids);
            if (!root_reducible(t)) out.push_back(t);
          });
          return;
        }
        for (std::size_t s = 1; s + (g.arity - pos - 1) <= left; ++s) {
          parts[pos] = s;
          rec(pos + 1, left - s);
        }
      };
      rec(0, n);
    }
    std::sort(out.begin(), out.end());
    return memo.emplace(n, std::move(out)).first->second;
  }

  Signature sig_;
  RuleMode mode_;
  std::vector<TreeRule> rules_;
};

// Sum over binary internal nodes u of the degree of the subtree at u2.
inline long long tamari_invariant(const Tree& t) {
  if (t.is_leaf()) return 0;
  long long s = 0;
  if (t.root_arity() == 2) s += static_cast<long long>(t.children()[1].degree());
  for (const auto& c : t.children()) s += tamari_invariant(c);
  return s;
}

inline std::vector<long long> degree_tamari_invariant(const Tree& t) {
  return {static_cast<long long>(t.degree()), tamari_invariant(t)};
}

// Right rotation on binary trees with one symbol b: (b (b x y) z) -> (b x (b y z)).
inline TreeRewriteSystem rotation_system(const std::string& sym = "b") {
  TreeRewriteSystem r(Signature::uniform({sym}, 2), RuleMode::set);
  r.add_rule(Tree::parse("(" + sym + " (" + sym + " * *) *)"), Tree::parse("(" + sym + " * (" + sym + " * *))"));
  return r;
}

}  // namespace operadica
