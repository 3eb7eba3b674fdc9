#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "operadica/trees/grafting.hpp"

namespace operadica {

// (output color, tree, input colors of the leaves).
struct ColoredTree {
  int out = 0;
  Tree tree;
  std::vector<int> in;

  std::size_t arity() const { return in.size(); }
  bool operator==(const ColoredTree&) const = default;

  std::string str() const {
    std::string s = "(colored " + std::to_string(out) + " " + tree.str() + " (";
    for (std::size_t i = 0; i < in.size(); ++i) s += (i ? " " : "") + std::to_string(in[i]);
    return s + "))";
  }
};

inline std::string color_word(const std::vector<int>& w) {
  std::string s;
  for (int c : w) s += std::to_string(c);
  return s;
}

namespace detail {
inline void check_colored_edges(const Signature& sig, const Tree& t) {
  if (t.is_leaf()) return;
  const auto& g = sig.at(t.symbol());
  if (!g.out) throw std::invalid_argument("generator '" + g.name + "' carries no colors");
  if (g.arity != t.root_arity())
    throw std::invalid_argument("node '" + g.name + "' has " + std::to_string(t.root_arity()) +
                                " children but arity " + std::to_string(g.arity));
  for (std::size_t k = 0; k < t.root_arity(); ++k) {
    const Tree& c = t.children()[k];
    if (c.is_leaf()) continue;
    int got = *sig.at(c.symbol()).out;
    if (got != g.in[k])
      throw std::invalid_argument("color mismatch below '" + g.name + "' at input " + std::to_string(k + 1) +
                                  ": expected " + std::to_string(g.in[k]) + ", got " + std::to_string(got));
    check_colored_edges(sig, c);
  }
}

inline void collect_leaf_colors(const Signature& sig, const Tree& t, std::vector<int>& out) {
  for (std::size_t k = 0; k < t.root_arity(); ++k) {
    const Tree& c = t.children()[k];
    if (c.is_leaf()) out.push_back(sig.at(t.symbol()).in[k]);
    else collect_leaf_colors(sig, c, out);
  }
}
}  // namespace detail

// Throws unless every internal edge joins equal colors and the word length is the arity.
inline void check_colored(const Signature& sig, const ColoredTree& t) {
  if (t.in.size() != t.tree.arity())
    throw std::invalid_argument("colored tree of arity " + std::to_string(t.tree.arity()) + " has " +
                                std::to_string(t.in.size()) + " input colors");
  detail::check_colored_edges(sig, t.tree);
}

// The colored tree whose output and input colors are read off its generators.
inline ColoredTree induced_coloring(const Signature& sig, const Tree& t) {
  if (t.is_leaf()) throw std::invalid_argument("a leaf does not determine its color");
  detail::check_colored_edges(sig, t);
  ColoredTree c{*sig.at(t.symbol()).out, t, {}};
  detail::collect_leaf_colors(sig, t, c.in);
  return c;
}

inline ColoredTree colored_leaf(int color) { return ColoredTree{color, Tree::leaf(), {color}}; }

inline ColoredTree colored_graft(const ColoredTree& t, std::size_t i, const ColoredTree& s) {
  if (i < 1 || i > t.arity())
    throw std::out_of_range("graft position " + std::to_string(i) + " outside 1.." + std::to_string(t.arity()));
  if (t.in[i - 1] != s.out)
    throw std::invalid_argument("color mismatch at input " + std::to_string(i) + ": expected " +
                                std::to_string(t.in[i - 1]) + ", got " + std::to_string(s.out));
  ColoredTree r{t.out, graft_partial(t.tree, i, s.tree), {}};
  r.in.insert(r.in.end(), t.in.begin(), t.in.begin() + static_cast<long>(i - 1));
  r.in.insert(r.in.end(), s.in.begin(), s.in.end());
  r.in.insert(r.in.end(), t.in.begin() + static_cast<long>(i), t.in.end());
  return r;
}

}  // namespace operadica
