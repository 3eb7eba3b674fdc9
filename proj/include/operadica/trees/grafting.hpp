#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "operadica/trees/tree.hpp"

namespace operadica {

// Node address: the path of 1-based child indices from the root.
using Address = std::vector<int>;

inline std::string address_str(const Address& u) {
  if (u.empty()) return "ε";
  bool wide = false;
  for (int x : u) wide = wide || x > 9;
  std::string s;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (wide && i) s += '.';
    s += std::to_string(u[i]);
  }
  return s;
}

inline Address parse_address(const std::string& s) {
  Address u;
  if (s.empty() || s == "ε" || s == "e") return u;
  bool dotted = s.find('.') != std::string::npos;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = dotted ? s.find('.', i) : i + 1;
    if (j == std::string::npos) j = s.size();
    std::string part = s.substr(i, j - i);
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos || std::stoi(part) < 1)
      throw std::invalid_argument("invalid address '" + s + "'");
    u.push_back(std::stoi(part));
    i = dotted ? j + 1 : j;
  }
  return u;
}

struct TreeLanguage {
  std::vector<Address> internal;  // lexicographic
  std::vector<Address> leaves;    // lexicographic, i.e. leaf 1..arity

  std::vector<Address> all() const {
    std::vector<Address> a = internal;
    a.insert(a.end(), leaves.begin(), leaves.end());
    std::sort(a.begin(), a.end());
    return a;
  }
};

namespace detail {
inline void collect_language(const Tree& t, Address& u, TreeLanguage& out) {
  if (t.is_leaf()) {
    out.leaves.push_back(u);
    return;
  }
  out.internal.push_back(u);
  for (std::size_t i = 0; i < t.root_arity(); ++i) {
    u.push_back(static_cast<int>(i + 1));
    collect_language(t.children()[i], u, out);
    u.pop_back();
  }
}
}  // namespace detail

// Preorder traversal visits addresses in lexicographic order, so no sort is needed.
inline TreeLanguage tree_language(const Tree& t) {
  TreeLanguage out;
  Address u;
  detail::collect_language(t, u, out);
  return out;
}

inline const Tree& subtree_at(const Tree& t, const Address& u) {
  const Tree* cur = &t;
  for (int x : u) {
    if (x < 1 || static_cast<std::size_t>(x) > cur->root_arity())
      throw std::out_of_range("address " + address_str(u) + " is not in the tree " + t.str());
    cur = &cur->children()[static_cast<std::size_t>(x - 1)];
  }
  return *cur;
}

// t with the subtree at u replaced by s.
inline Tree replace_at(const Tree& t, const Address& u, const Tree& s, std::size_t depth = 0) {
  if (depth == u.size()) return s;
  int x = u[depth];
  if (x < 1 || static_cast<std::size_t>(x) > t.root_arity())
    throw std::out_of_range("address " + address_str(u) + " is not in the tree " + t.str());
  std::vector<Tree> kids = t.children();
  kids[static_cast<std::size_t>(x - 1)] = replace_at(kids[static_cast<std::size_t>(x - 1)], u, s, depth + 1);
  return Tree::node(t.symbol(), std::move(kids));
}

namespace detail {
// Grafts s on the leaf numbered i (counting from 1 across the whole tree); i is decremented as leaves pass.
inline Tree graft_on_leaf(const Tree& t, std::size_t& i, const Tree& s) {
  if (t.is_leaf()) return --i == 0 ? s : t;
  if (i > t.arity()) {
    i -= t.arity();
    return t;
  }
  std::vector<Tree> kids;
  kids.reserve(t.root_arity());
  for (const auto& c : t.children()) kids.push_back(i == 0 ? c : graft_on_leaf(c, i, s));
  return Tree::node(t.symbol(), std::move(kids));
}

inline Tree graft_all(const Tree& t, const std::vector<Tree>& ss, std::size_t& next) {
  if (t.is_leaf()) return ss[next++];
  std::vector<Tree> kids;
  kids.reserve(t.root_arity());
  for (const auto& c : t.children()) kids.push_back(graft_all(c, ss, next));
  return Tree::node(t.symbol(), std::move(kids));
}
}  // namespace detail

inline Tree graft_partial(const Tree& t, std::size_t i, const Tree& s) {
  if (i < 1 || i > t.arity())
    throw std::out_of_range("graft position " + std::to_string(i) + " outside 1.." + std::to_string(t.arity()));
  std::size_t k = i;
  return detail::graft_on_leaf(t, k, s);
}

inline Tree graft_complete(const Tree& t, const std::vector<Tree>& ss) {
  if (ss.size() != t.arity())
    throw std::invalid_argument("complete grafting on a tree of arity " + std::to_string(t.arity()) +
                                " needs " + std::to_string(t.arity()) + " trees, got " +
                                std::to_string(ss.size()));
  std::size_t next = 0;
  return detail::graft_all(t, ss, next);
}

// Same result as graft_complete, computed as the right-to-left fold of partial graftings.
inline Tree graft_complete_by_fold(const Tree& t, const std::vector<Tree>& ss) {
  if (ss.size() != t.arity()) throw std::invalid_argument("complete grafting: length mismatch");
  Tree r = t;
  for (std::size_t i = ss.size(); i >= 1; --i) r = graft_partial(r, i, ss[i - 1]);
  return r;
}

inline Tree graft_context(const Tree& t, std::size_t i, const Tree& s, const std::vector<Tree>& rs) {
  if (i < 1 || i > t.arity())
    throw std::out_of_range("graft position " + std::to_string(i) + " outside 1.." + std::to_string(t.arity()));
  return graft_partial(t, i, graft_complete(s, rs));
}

// Rooted factor matching: pattern leaves match any subtree. On success the matched
// subtrees are appended to holes in leaf order.
inline bool match_at_root(const Tree& t, const Tree& pattern, std::vector<Tree>* holes = nullptr) {
  if (pattern.is_leaf()) {
    if (holes) holes->push_back(t);
    return true;
  }
  if (t.is_leaf() || t.symbol() != pattern.symbol() || t.root_arity() != pattern.root_arity()) return false;
  if (t.degree() < pattern.degree()) return false;
  for (std::size_t k = 0; k < t.root_arity(); ++k)
    if (!match_at_root(t.children()[k], pattern.children()[k], holes)) return false;
  return true;
}

namespace detail {
inline void find_occurrences(const Tree& t, const Tree& s, Address& u, std::vector<Address>& out) {
  if (match_at_root(t, s)) out.push_back(u);
  for (std::size_t k = 0; k < t.root_arity(); ++k) {
    u.push_back(static_cast<int>(k + 1));
    find_occurrences(t.children()[k], s, u, out);
    u.pop_back();
  }
}
}  // namespace detail

// Addresses (lexicographic) where s occurs as a rooted factor of t.
inline std::vector<Address> occurrences(const Tree& t, const Tree& s) {
  std::vector<Address> out;
  Address u;
  detail::find_occurrences(t, s, u, out);
  return out;
}

inline bool avoids(const Tree& t, const std::vector<Tree>& patterns) {
  for (const auto& p : patterns)
    if (!occurrences(t, p).empty()) return false;
  return true;
}

}  // namespace operadica
