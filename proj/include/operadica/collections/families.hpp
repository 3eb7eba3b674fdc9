#pragma once

#include <algorithm>
#include <cstdlib>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "operadica/collections/graded_collection.hpp"
#include "operadica/collections/operations.hpp"

namespace operadica {

namespace detail {

inline long long tagged_length(const Obj& o, const std::string& tag) {
  if (!o.has_tag(tag)) throw std::invalid_argument("expected (" + tag + " ...), got " + o.str());
  return static_cast<long long>(o.length()) - 1;
}

inline Obj leaf_obj() { return Obj::tagged("leaf"); }

// Ordered forests of `count` trees drawn from `by_size`, with total size `total`.
inline void for_each_forest(std::size_t total, std::size_t count,
                            const std::function<const std::vector<Obj>&(std::size_t)>& by_size,
                            std::size_t min_size,
                            const std::function<void(const std::vector<Obj>&)>& f) {
  std::vector<Obj> cur;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t left, std::size_t slots) {
    if (slots == 0) {
      if (left == 0) f(cur);
      return;
    }
    if (left < slots * min_size) return;
    for (std::size_t s = min_size; s + (slots - 1) * min_size <= left; ++s)
      for (const auto& t : by_size(s)) {
        cur.push_back(t);
        rec(left - s, slots - 1);
        cur.pop_back();
      }
  };
  rec(total, count);
}

// Tree family: (leaf) of size leaf_size, (node c1 ... ck) with k in
// [min_children, max_children] contributing node_size plus the children's sizes.
class TreeFamily {
 public:
  TreeFamily(std::size_t leaf_size, std::size_t node_size, std::size_t min_children,
             std::size_t max_children)
      : leaf_size_(leaf_size), node_size_(node_size), min_children_(min_children),
        max_children_(max_children), memo_(std::make_shared<Memo>()) {}

  const std::vector<Obj>& generate(std::size_t n) const {
    {
      std::lock_guard<std::mutex> lock(memo_->mu);
      auto it = memo_->by_size.find(n);
      if (it != memo_->by_size.end()) return it->second;
    }
    std::vector<Obj> out;
    if (n == leaf_size_) out.push_back(leaf_obj());
    if (n >= node_size_) {
      std::size_t rest = n - node_size_;
      std::size_t min_child = leaf_size_;  // the smallest tree is a leaf
      std::size_t max_k = max_children_;
      if (min_child > 0) max_k = std::min(max_k, rest / min_child);
      for (std::size_t k = min_children_; k <= max_k; ++k)
        for_each_forest(
            rest, k, [&](std::size_t s) -> const std::vector<Obj>& { return generate(s); }, min_child,
            [&](const std::vector<Obj>& kids) { out.push_back(Obj::tagged_list("node", kids)); });
    }
    std::lock_guard<std::mutex> lock(memo_->mu);
    return memo_->by_size.try_emplace(n, std::move(out)).first->second;
  }

  long long size(const Obj& o) const {
    if (o.has_tag("leaf") && o.length() == 1) return static_cast<long long>(leaf_size_);
    if (!o.has_tag("node")) throw std::invalid_argument("not a tree object: " + o.str());
    std::size_t k = o.length() - 1;
    if (k < min_children_ || k > max_children_)
      throw std::invalid_argument("node with " + std::to_string(k) + " children not allowed");
    long long s = static_cast<long long>(node_size_);
    for (std::size_t i = 1; i < o.length(); ++i) s += size(o[i]);
    return s;
  }

 private:
  struct Memo {
    std::mutex mu;
    std::map<std::size_t, std::vector<Obj>> by_size;
  };
  std::size_t leaf_size_, node_size_, min_children_, max_children_;
  std::shared_ptr<Memo> memo_;
};

inline GradedCollection tree_collection(const std::string& name, const TreeFamily& fam) {
  return GradedCollection(
      name, [fam](std::size_t n) { return fam.generate(n); },
      [fam](const Obj& o) { return fam.size(o); });
}

inline std::vector<std::vector<long long>> integer_compositions(long long n) {
  std::vector<std::vector<long long>> out;
  std::vector<long long> cur;
  std::function<void(long long)> rec = [&](long long left) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (long long p = 1; p <= left; ++p) {
      cur.push_back(p);
      rec(left - p);
      cur.pop_back();
    }
  };
  rec(n);
  return out;
}

inline std::vector<std::vector<long long>> integer_partitions(long long n) {
  std::vector<std::vector<long long>> out;
  std::vector<long long> cur;
  std::function<void(long long, long long)> rec = [&](long long left, long long max_part) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (long long p = std::min(left, max_part); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

inline bool is_motzkin_word(const std::vector<long long>& w) {
  if (w.empty() || w.front() != 0 || w.back() != 0) return false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] < 0) return false;
    if (i > 0 && std::abs(w[i] - w[i - 1]) > 1) return false;
  }
  return true;
}

inline std::vector<std::vector<long long>> motzkin_words_of_length(std::size_t n) {
  std::vector<std::vector<long long>> out;
  if (n == 0) return out;
  std::vector<long long> cur{0};
  std::function<void()> rec = [&]() {
    long long h = cur.back();
    std::size_t left = n - cur.size();
    if (left == 0) {
      if (h == 0) out.push_back(cur);
      return;
    }
    if (static_cast<std::size_t>(h) > left) return;
    for (long long d = -1; d <= 1; ++d) {
      if (h + d < 0) continue;
      cur.push_back(h + d);
      rec();
      cur.pop_back();
    }
  };
  rec();
  return out;
}

}  // namespace detail

inline GradedCollection naturals() {
  return GradedCollection(
      "naturals", [](std::size_t n) { return std::vector<Obj>{Obj::integer(static_cast<long long>(n))}; },
      [](const Obj& o) -> long long {
        long long v = o.as_int();
        if (v < 0) throw std::invalid_argument("negative natural");
        return v;
      });
}

inline GradedCollection words(std::vector<std::string> alphabet) {
  if (alphabet.empty()) throw std::invalid_argument("words: alphabet must be nonempty");
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  std::string name = "words(";
  for (std::size_t i = 0; i < alphabet.size(); ++i) name += (i ? "," : "") + alphabet[i];
  name += ")";
  return GradedCollection(
      name,
      [alphabet](std::size_t n) {
        std::vector<Obj> out;
        std::vector<std::size_t> idx(n, 0);
        for (;;) {
          Obj::List w{Obj::symbol("word")};
          for (auto i : idx) w.push_back(Obj::symbol(alphabet[i]));
          out.push_back(Obj::list(std::move(w)));
          std::size_t p = n;
          while (p > 0 && idx[p - 1] + 1 == alphabet.size()) idx[--p] = 0;
          if (p == 0) break;
          ++idx[p - 1];
        }
        return out;
      },
      [alphabet](const Obj& o) -> long long {
        long long n = detail::tagged_length(o, "word");
        for (std::size_t i = 1; i < o.length(); ++i)
          if (!std::binary_search(alphabet.begin(), alphabet.end(), o[i].as_symbol()))
            throw std::invalid_argument("letter outside the alphabet: " + o[i].str());
        return n;
      });
}

inline GradedCollection compositions() {
  return GradedCollection(
      "compositions",
      [](std::size_t n) {
        std::vector<Obj> out;
        for (const auto& c : detail::integer_compositions(static_cast<long long>(n)))
          out.push_back(Obj::int_list("comp", c));
        return out;
      },
      [](const Obj& o) -> long long {
        detail::tagged_length(o, "comp");
        long long s = 0;
        for (long long p : o.int_args()) {
          if (p < 1) throw std::invalid_argument("composition parts must be positive");
          s += p;
        }
        return s;
      });
}

inline GradedCollection partitions() {
  return GradedCollection(
      "partitions",
      [](std::size_t n) {
        std::vector<Obj> out;
        for (const auto& c : detail::integer_partitions(static_cast<long long>(n)))
          out.push_back(Obj::int_list("part", c));
        return out;
      },
      [](const Obj& o) -> long long {
        detail::tagged_length(o, "part");
        auto ps = o.int_args();
        long long s = 0;
        for (std::size_t i = 0; i < ps.size(); ++i) {
          if (ps[i] < 1 || (i > 0 && ps[i] > ps[i - 1]))
            throw std::invalid_argument("partition parts must be positive and weakly decreasing");
          s += ps[i];
        }
        return s;
      });
}

inline GradedCollection permutations() {
  return GradedCollection(
      "permutations",
      [](std::size_t n) {
        std::vector<long long> p(n);
        std::iota(p.begin(), p.end(), 1);
        std::vector<Obj> out;
        do out.push_back(Obj::int_list("perm", p));
        while (std::next_permutation(p.begin(), p.end()));
        return out;
      },
      [](const Obj& o) -> long long {
        detail::tagged_length(o, "perm");
        auto p = o.int_args();
        std::vector<bool> seen(p.size() + 1, false);
        for (long long v : p) {
          if (v < 1 || v > static_cast<long long>(p.size()) || seen[v])
            throw std::invalid_argument("not a permutation: " + o.str());
          seen[v] = true;
        }
        return static_cast<long long>(p.size());
      });
}

// Planar rooted trees sized by their number of nodes: (leaf) or (node t1 ... tk), k >= 1.
inline GradedCollection planar_trees() {
  return detail::tree_collection("planar_trees", detail::TreeFamily(1, 1, 1, static_cast<std::size_t>(-1)));
}

inline GradedCollection binary_trees_leaf() {
  return detail::tree_collection("binary_trees_leaf", detail::TreeFamily(1, 0, 2, 2));
}

inline GradedCollection binary_trees_node() {
  return detail::tree_collection("binary_trees_node", detail::TreeFamily(0, 1, 2, 2));
}

// k-ary trees sized by internal nodes.
inline GradedCollection kary_trees(std::size_t k) {
  if (k < 1) throw std::invalid_argument("kary_trees: k must be at least 1");
  return detail::tree_collection("kary_trees(" + std::to_string(k) + ")", detail::TreeFamily(0, 1, k, k));
}

// Schroder trees sized by leaves: internal nodes have at least two children.
inline GradedCollection schroder_trees() {
  return detail::tree_collection("schroder_trees",
                                 detail::TreeFamily(1, 0, 2, static_cast<std::size_t>(-1)));
}

inline GradedCollection motzkin_words() {
  return GradedCollection(
      "motzkin_words",
      [](std::size_t n) {
        std::vector<Obj> out;
        for (const auto& w : detail::motzkin_words_of_length(n)) out.push_back(Obj::int_list("motz", w));
        return out;
      },
      [](const Obj& o) -> long long {
        long long n = detail::tagged_length(o, "motz");
        if (!detail::is_motzkin_word(o.int_args()))
          throw std::invalid_argument("not a Motzkin word: " + o.str());
        return n;
      });
}

// Nonempty words of naturals sized by length minus one. Infinitely many per size.
inline GradedCollection paths() {
  return GradedCollection(
      "paths",
      [](std::size_t n) -> std::vector<Obj> {
        throw std::domain_error("paths of size " + std::to_string(n) +
                                " form an infinite set; enumerate a constrained path family instead");
      },
      [](const Obj& o) -> long long {
        long long n = detail::tagged_length(o, "path");
        if (n < 1) throw std::invalid_argument("paths are nonempty");
        for (long long v : o.int_args())
          if (v < 0) throw std::invalid_argument("path heights are natural numbers");
        return n - 1;
      },
      [](const Obj& o) {
        if (!o.has_tag("path") || o.length() < 2) return false;
        for (std::size_t i = 1; i < o.length(); ++i)
          if (!o[i].is_int() || o[i].as_int() < 0) return false;
        return true;
      });
}

inline std::string normalize_family_name(std::string name) {
  std::replace(name.begin(), name.end(), '-', '_');
  return name;
}

// Family by name; "kary_trees" takes `param` as k, "words" takes `letters`.
inline GradedCollection family(const std::string& raw_name, long long param = 3,
                               const std::vector<std::string>& letters = {"a", "b"}) {
  std::string name = normalize_family_name(raw_name);
  if (name == "naturals") return naturals();
  if (name == "words") return words(letters);
  if (name == "compositions") return compositions();
  if (name == "partitions") return partitions();
  if (name == "permutations") return permutations();
  if (name == "planar_trees") return planar_trees();
  if (name == "binary_trees_leaf") return binary_trees_leaf();
  if (name == "binary_trees_node" || name == "binary_trees") return binary_trees_node();
  if (name == "kary_trees") {
    if (param < 1) throw std::invalid_argument("kary_trees: k must be at least 1");
    return kary_trees(static_cast<std::size_t>(param));
  }
  if (name == "schroder_trees") return schroder_trees();
  if (name == "motzkin_words") return motzkin_words();
  if (name == "paths") return paths();
  throw std::invalid_argument("unknown family '" + raw_name + "'");
}

inline std::vector<std::string> family_names() {
  return {"naturals",     "words",       "compositions", "partitions",
          "permutations", "planar_trees", "binary_trees_leaf", "binary_trees_node",
          "kary_trees",   "schroder_trees", "motzkin_words", "paths"};
}

}  // namespace operadica
