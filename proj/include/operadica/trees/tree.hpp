#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "operadica/collections/obj.hpp"

namespace operadica {

// Syntax tree: a leaf, or a node carrying a symbol and an ordered list of children.
// Leaves are unlabeled; a node's arity is its number of children.
class Tree {
 public:
  Tree() = default;

  static Tree leaf() { return Tree(); }

  static Tree node(std::string symbol, std::vector<Tree> children) {
    if (symbol.empty() || symbol == "*") throw std::invalid_argument("invalid node symbol '" + symbol + "'");
    if (children.empty())
      throw std::invalid_argument("node '" + symbol + "' needs at least one child");
    auto n = std::make_shared<Node>();
    n->symbol = std::move(symbol);
    n->arity = 0;
    n->degree = 1;
    n->height = 0;
    std::size_t h = std::hash<std::string>{}(n->symbol) * 0x9e3779b97f4a7c15ULL;
    for (const auto& c : children) {
      n->arity += c.arity();
      n->degree += c.degree();
      n->height = std::max(n->height, c.height());
      h = (h ^ c.hash()) * 0x100000001b3ULL + 0x632be5ab;
    }
    n->height += 1;
    n->hash = h;
    n->children = std::move(children);
    return Tree(std::move(n));
  }

  static Tree corolla(const std::string& symbol, std::size_t arity) {
    return node(symbol, std::vector<Tree>(arity));
  }

  bool is_leaf() const { return !n_; }
  const std::string& symbol() const {
    if (!n_) throw std::logic_error("a leaf has no symbol");
    return n_->symbol;
  }
  const std::vector<Tree>& children() const {
    static const std::vector<Tree> none;
    return n_ ? n_->children : none;
  }
  // 1-based child access.
  const Tree& child(std::size_t i) const { return children().at(i - 1); }
  std::size_t root_arity() const { return n_ ? n_->children.size() : 0; }

  std::size_t arity() const { return n_ ? n_->arity : 1; }
  std::size_t degree() const { return n_ ? n_->degree : 0; }
  std::size_t height() const { return n_ ? n_->height : 0; }
  std::size_t hash() const { return n_ ? n_->hash : 0x5bd1e995; }

  // Canonical order: arity, then degree, then structure (leaf first, symbol, children).
  std::strong_ordering operator<=>(const Tree& o) const {
    if (n_ == o.n_) return std::strong_ordering::equal;
    if (auto c = arity() <=> o.arity(); c != 0) return c;
    if (auto c = degree() <=> o.degree(); c != 0) return c;
    return structural_compare(o);
  }
  bool operator==(const Tree& o) const {
    if (n_ == o.n_) return true;
    if (hash() != o.hash()) return false;
    return (*this <=> o) == 0;
  }

  std::string str() const {
    std::string out;
    write(out);
    return out;
  }
  void write(std::string& out) const {
    if (!n_) {
      out += '*';
      return;
    }
    out += '(';
    out += n_->symbol;
    for (const auto& c : n_->children) {
      out += ' ';
      c.write(out);
    }
    out += ')';
  }

  static Tree parse(const std::string& text);

  // Obj view: the leaf is the symbol *, a node is (symbol children...).
  Obj to_obj() const {
    if (!n_) return Obj::symbol("*");
    Obj::List items{Obj::symbol(n_->symbol)};
    for (const auto& c : n_->children) items.push_back(c.to_obj());
    return Obj::list(std::move(items));
  }
  static Tree from_obj(const Obj& o) {
    if (o.is_symbol() && o.as_symbol() == "*") return leaf();
    if (!o.is_list() || o.length() < 2) throw std::invalid_argument("not a syntax tree: " + o.str());
    const auto& items = o.items();
    std::string sym = items[0].is_int() ? std::to_string(items[0].as_int()) : items[0].as_symbol();
    std::vector<Tree> kids;
    for (std::size_t i = 1; i < items.size(); ++i) kids.push_back(from_obj(items[i]));
    return node(sym, std::move(kids));
  }

 private:
  struct Node {
    std::string symbol;
    std::vector<Tree> children;
    std::size_t arity, degree, height, hash;
  };
  explicit Tree(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

  std::strong_ordering structural_compare(const Tree& o) const {
    if (n_ == o.n_) return std::strong_ordering::equal;
    if (!n_) return std::strong_ordering::less;
    if (!o.n_) return std::strong_ordering::greater;
    if (int c = n_->symbol.compare(o.n_->symbol); c != 0)
      return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    const auto& a = n_->children;
    const auto& b = o.n_->children;
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (auto c = a[i].structural_compare(b[i]); c != 0) return c;
    return std::strong_ordering::equal;
  }

  std::shared_ptr<const Node> n_;
};

inline std::ostream& operator<<(std::ostream& os, const Tree& t) { return os << t.str(); }

struct TreeHash {
  std::size_t operator()(const Tree& t) const { return t.hash(); }
};

namespace detail {

class TreeReader {
 public:
  explicit TreeReader(const std::string& s) : s_(s) {}
  Tree read_all() {
    Tree t = read();
    skip();
    if (pos_ != s_.size()) fail("trailing text");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("cannot parse tree '" + s_ + "' at offset " + std::to_string(pos_) +
                                ": " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  std::string atom() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != '(' && s_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (start == pos_) fail("expected a symbol");
    return s_.substr(start, pos_ - start);
  }
  Tree read() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (s_[pos_] == ')') fail("unbalanced ')'");
    if (s_[pos_] != '(') {
      std::string a = atom();
      if (a != "*") fail("a bare symbol must be the leaf '*'");
      return Tree::leaf();
    }
    ++pos_;
    skip();
    std::string sym = atom();
    if (sym == "*") fail("'*' cannot label a node");
    std::vector<Tree> kids;
    for (;;) {
      skip();
      if (pos_ >= s_.size()) fail("missing ')'");
      if (s_[pos_] == ')') {
        ++pos_;
        break;
      }
      kids.push_back(read());
    }
    if (kids.empty()) fail("node '" + sym + "' has no children");
    return Tree::node(sym, std::move(kids));
  }
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Tree Tree::parse(const std::string& text) { return detail::TreeReader(text).read_all(); }

struct Generator {
  std::string name;
  std::size_t arity = 0;
  std::optional<int> out;  // colored signatures only
  std::vector<int> in;
};

// Generators with arities (and optionally colors), in declaration order.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<Generator> gens) {
    for (auto& g : gens) add(std::move(g));
  }

  static Signature uniform(const std::vector<std::string>& names, std::size_t arity) {
    Signature s;
    for (const auto& n : names) s.add(Generator{n, arity, std::nullopt, {}});
    return s;
  }

  void add(Generator g) {
    if (g.name.empty() || g.name == "*" || g.name.find_first_of("() \t\n") != std::string::npos)
      throw std::invalid_argument("invalid generator name '" + g.name + "'");
    if (g.arity < 1) throw std::invalid_argument("generator '" + g.name + "' must have arity >= 1");
    if (index_.count(g.name)) throw std::invalid_argument("duplicate generator '" + g.name + "'");
    if (!g.out && !g.in.empty())
      throw std::invalid_argument("generator '" + g.name + "' has input colors but no output color");
    if (g.out && g.in.size() != g.arity)
      throw std::invalid_argument("generator '" + g.name + "' has " + std::to_string(g.in.size()) +
                                  " input colors for arity " + std::to_string(g.arity));
    index_[g.name] = gens_.size();
    gens_.push_back(std::move(g));
  }

  const std::vector<Generator>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  bool contains(const std::string& name) const { return index_.count(name) > 0; }
  const Generator& at(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::invalid_argument("unknown generator '" + name + "'");
    return gens_[it->second];
  }
  std::size_t position(const std::string& name) const {
    at(name);
    return index_.at(name);
  }
  std::size_t arity(const std::string& name) const { return at(name).arity; }
  bool is_colored() const {
    return !gens_.empty() && std::all_of(gens_.begin(), gens_.end(), [](const Generator& g) { return g.out.has_value(); });
  }
  bool has_unary() const {
    return std::any_of(gens_.begin(), gens_.end(), [](const Generator& g) { return g.arity == 1; });
  }
  bool all_binary() const {
    return std::all_of(gens_.begin(), gens_.end(), [](const Generator& g) { return g.arity == 2; });
  }

  // Throws unless every node of t is labeled by a generator of matching arity.
  void check(const Tree& t) const {
    if (t.is_leaf()) return;
    const auto& g = at(t.symbol());
    if (g.arity != t.root_arity())
      throw std::invalid_argument("node '" + g.name + "' has " + std::to_string(t.root_arity()) +
                                  " children but arity " + std::to_string(g.arity));
    for (const auto& c : t.children()) check(c);
  }
  bool accepts(const Tree& t) const {
    try {
      check(t);
      return true;
    } catch (const std::invalid_argument&) {
      return false;
    }
  }

 private:
  std::vector<Generator> gens_;
  std::map<std::string, std::size_t> index_;
};

}  // namespace operadica
