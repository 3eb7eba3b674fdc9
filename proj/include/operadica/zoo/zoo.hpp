#pragma once

#include <cctype>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "operadica/operads/presentation.hpp"
#include "operadica/zoo/classic.hpp"
#include "operadica/zoo/nct.hpp"
#include "operadica/zoo/t_construction.hpp"

namespace operadica {

namespace detail {

struct PresentationData {
  const char* name;
  const char* json;
};

// Dup, Motz and NCT orientations go toward right combs; Dendr has none (found by search).
inline const std::vector<PresentationData>& presentation_table() {
  static const std::vector<PresentationData> table{
      {"as", R"json({
  "name": "as",
  "signature": [{"name": "a", "arity": 2}],
  "relations": ["(a (a * *) *) - (a * (a * *))"],
  "realization": {"a": "(a 2)"},
  "mode": "set",
  "rules": [{"lhs": "(a * (a * *))", "rhs": "(a (a * *) *)"}]
})json"},
      {"dias", R"json({
  "name": "dias",
  "signature": [{"name": "l", "arity": 2}, {"name": "r", "arity": 2}],
  "relations": [
    "(l (l * *) *) - (l * (l * *))",
    "(l (l * *) *) - (l * (r * *))",
    "(l (r * *) *) - (r * (l * *))",
    "(r (l * *) *) - (r * (r * *))",
    "(r (r * *) *) - (r * (r * *))"
  ],
  "realization": {"l": "(e 2 1)", "r": "(e 2 2)"},
  "mode": "set",
  "rules": [
    {"lhs": "(l * (l * *))", "rhs": "(l (l * *) *)"},
    {"lhs": "(l * (r * *))", "rhs": "(l (l * *) *)"},
    {"lhs": "(r * (l * *))", "rhs": "(l (r * *) *)"},
    {"lhs": "(r (l * *) *)", "rhs": "(r * (r * *))"},
    {"lhs": "(r (r * *) *)", "rhs": "(r * (r * *))"}
  ]
})json"},
      {"dup", R"json({
  "name": "dup",
  "signature": [{"name": "l", "arity": 2}, {"name": "r", "arity": 2}],
  "relations": [
    "(l (l * *) *) - (l * (l * *))",
    "(r (l * *) *) - (l * (r * *))",
    "(r (r * *) *) - (r * (r * *))"
  ],
  "realization": {"l": "(node (node (leaf) (leaf)) (leaf))", "r": "(node (leaf) (node (leaf) (leaf)))"},
  "mode": "set",
  "rules": [
    {"lhs": "(l (l * *) *)", "rhs": "(l * (l * *))"},
    {"lhs": "(r (l * *) *)", "rhs": "(l * (r * *))"},
    {"lhs": "(r (r * *) *)", "rhs": "(r * (r * *))"}
  ]
})json"},
      {"dendr", R"json({
  "name": "dendr",
  "signature": [{"name": "l", "arity": 2}, {"name": "r", "arity": 2}],
  "relations": [
    "(l (l * *) *) - (l * (l * *)) - (l * (r * *))",
    "(l (r * *) *) - (r * (l * *))",
    "(r (l * *) *) + (r (r * *) *) - (r * (r * *))"
  ]
})json"},
      {"mag", R"json({
  "name": "mag",
  "signature": [{"name": "m", "arity": 2}],
  "relations": [],
  "realization": {"m": "(node (leaf) (leaf))"},
  "mode": "set",
  "rules": []
})json"},
      {"motz", R"json({
  "name": "motz",
  "signature": [{"name": "s", "arity": 2}, {"name": "p", "arity": 3}],
  "relations": [
    "(s (s * *) *) - (s * (s * *))",
    "(p (s * *) * *) - (s * (p * * *))",
    "(s (p * * *) *) - (p * * (s * *))",
    "(p (p * * *) * *) - (p * * (p * * *))"
  ],
  "realization": {"s": "(motz 0 0)", "p": "(motz 0 1 0)"},
  "mode": "set",
  "rules": [
    {"lhs": "(s (s * *) *)", "rhs": "(s * (s * *))"},
    {"lhs": "(p (s * *) * *)", "rhs": "(s * (p * * *))"},
    {"lhs": "(s (p * * *) *)", "rhs": "(p * * (s * *))"},
    {"lhs": "(p (p * * *) * *)", "rhs": "(p * * (p * * *))"}
  ]
})json"},
      {"nct", R"json({
  "name": "nct",
  "signature": [{"name": "l", "arity": 2}, {"name": "r", "arity": 2}],
  "relations": ["(r (l * *) *) - (l * (r * *))"],
  "realization": {"l": "(nct 2 ((1 2) (1 3)))", "r": "(nct 2 ((1 3) (2 3)))"},
  "mode": "set",
  "rules": [{"lhs": "(r (l * *) *)", "rhs": "(l * (r * *))"}]
})json"},
  };
  return table;
}

}  // namespace detail

inline std::vector<std::string> presentation_names() {
  std::vector<std::string> out;
  for (const auto& d : detail::presentation_table()) out.push_back(d.name);
  return out;
}

inline Json presentation_json(const std::string& name) {
  for (const auto& d : detail::presentation_table())
    if (name == d.name) return Json::parse(d.json);
  if (name == "per")
    throw std::invalid_argument("per has no finite presentation: its generators are the simple permutations, infinitely many");
  throw std::invalid_argument("no built-in presentation for '" + name + "' (expected as, dias, dup, dendr, mag, motz or nct)");
}

inline Presentation presentation_of(const std::string& name) { return presentation_from_json(presentation_json(name)); }

// Quotient of the free operad by the Dendr relations, on the normal forms of the first
// convergent orientation found.
inline Operad dendr_realization() {
  Presentation p = presentation_of("dendr");
  auto search = search_orientation(p);
  if (!search.found) {
    std::string msg = "no convergent orientation of the dendr relations;";
    for (const auto& a : search.attempts) {
      msg += "\n ";
      for (const auto& t : a.lhs) msg += " " + t.str();
      msg += ": " + a.verdict;
    }
    throw std::runtime_error(msg);
  }
  return realize_quotient(p, *search.found);
}

inline std::vector<std::string> operad_names() {
  return {"as", "per", "dias", "mag", "dup", "motz", "nct", "dendr", "t-trivial", "t-max", "t-plus", "t-free"};
}

inline Operad operad_by_name(const std::string& name) {
  if (name == "as") return as_operad();
  if (name == "per") return per_operad();
  if (name == "dias") return dias_operad();
  if (name == "mag") return mag_operad();
  if (name == "dup") return dup_operad();
  if (name == "motz") return motz_operad();
  if (name == "nct") return nct_operad();
  if (name == "dendr") return dendr_realization();
  if (name == "t-trivial") return t_construction(trivial_monoid());
  if (name == "t-max") return t_construction(max_monoid());
  if (name == "t-plus") return t_construction(plus_monoid());
  if (name == "t-free") return t_construction(free_monoid());
  std::string known;
  for (const auto& n : operad_names()) known += (known.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown operad '" + name + "' (expected one of " + known + ")");
}

namespace detail {

inline std::vector<long long> digit_word(const std::string& text) {
  std::vector<long long> w;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (!std::isdigit(static_cast<unsigned char>(c))) throw std::invalid_argument("expected a word of digits, got '" + text + "'");
    w.push_back(c - '0');
  }
  return w;
}

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\n"), b = s.find_last_not_of(" \t\n");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

// Free monoid words separated by commas; "" or "e" is the empty word.
inline Obj free_monoid_tword(const std::string& text) {
  Obj::List t{Obj::symbol("t")};
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = text.find(',', start);
    std::string part = trim(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    Obj::List w{Obj::symbol("w")};
    if (part != "e")
      for (char c : part) w.push_back(Obj::symbol(std::string(1, c)));
    t.push_back(Obj::list(std::move(w)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return Obj::list(std::move(t));
}

}  // namespace detail

// Reads an element of the named operad from its s-expression or a short form:
// "a 5", "e 4 2", "41325" (per), "010" (motz), "11011" (t-max, t-plus, t-trivial),
// "aa,ba,b,e,a" (t-free). Dendr elements are syntax trees such as "(l * (r * *))".
inline Obj parse_element(const std::string& name, const std::string& raw, const Operad& op) {
  std::string text = detail::trim(raw);
  Obj x;
  if (name == "dendr") {
    x = Tree::parse(text).to_obj();
  } else if (!text.empty() && text[0] == '(') {
    x = Obj::parse(text);
  } else if (name == "as" || name == "dias") {
    x = Obj::parse("(" + text + ")");
  } else if (name == "per") {
    x = Obj::int_list("perm", text.find(' ') != std::string::npos ? Obj::parse("(perm " + text + ")").int_args() : detail::digit_word(text));
  } else if (name == "motz") {
    x = Obj::int_list("motz", detail::digit_word(text));
  } else if (name == "t-max" || name == "t-plus" || name == "t-trivial") {
    x = Obj::int_list("t", detail::digit_word(text));
  } else if (name == "t-free") {
    x = detail::free_monoid_tword(text);
  } else {
    throw std::invalid_argument("cannot read '" + raw + "' as an element of " + name + "; give its s-expression");
  }
  if (name == "nct") x = NCTree::from_obj(x).to_obj();
  op.arity(x);
  return x;
}

inline Obj parse_element(const std::string& name, const std::string& raw) { return parse_element(name, raw, operad_by_name(name)); }

// Inverse of the short forms of parse_element where one exists.
inline std::string element_text(const std::string& name, const Obj& x) {
  auto digits = [](const Obj& o) {
    std::string s;
    for (long long v : o.int_args()) {
      if (v < 0 || v > 9) return o.str();
      s += static_cast<char>('0' + v);
    }
    return s;
  };
  if ((name == "as" || name == "dias") && x.is_list()) {
    std::string s = x.str();
    return s.substr(1, s.size() - 2);
  }
  if ((name == "per" || name == "motz" || name == "t-max" || name == "t-plus" || name == "t-trivial") && x.is_list()) return digits(x);
  if (name == "t-free" && x.has_tag("t")) {
    std::string s;
    for (std::size_t i = 1; i < x.length(); ++i) {
      if (i > 1) s += ",";
      if (x[i].length() == 1) s += "e";
      for (std::size_t k = 1; k < x[i].length(); ++k) s += x[i][k].as_symbol();
    }
    return s;
  }
  return x.str();
}

struct EmbeddingVerdict {
  bool ok = true;
  std::string message;
  std::vector<std::size_t> sizes;
};

// Checks that phi is a bijection from the suboperad of `big` generated by gens onto
// `small`, arity by arity up to N, commuting with every partial composition.
template <typename Phi>
EmbeddingVerdict check_embedding(const Operad& big, const std::vector<Obj>& gens, const Operad& small, Phi phi,
                                 std::size_t N) {
  EmbeddingVerdict v;
  auto spans = generated_spans(big, gens, N);
  std::vector<std::vector<Obj>> objs(N + 1);
  for (std::size_t n = 1; n <= N; ++n) {
    for (const auto& b : spans[n].basis()) {
      if (!b.is_basis_element()) {
        v.ok = false;
        v.message = "generated span at arity " + std::to_string(n) + " has a non-object basis vector";
        return v;
      }
      objs[n].push_back(b.sole_key());
    }
    v.sizes.push_back(objs[n].size());
    std::set<Obj> image;
    for (const auto& x : objs[n]) image.insert(phi(x));
    const auto& target = small.carrier().enumerate_ref(n);
    if (image != std::set<Obj>(target.begin(), target.end()) || image.size() != objs[n].size()) {
      v.ok = false;
      v.message = "not a bijection at arity " + std::to_string(n) + ": " + std::to_string(objs[n].size()) +
                  " generated elements, " + std::to_string(image.size()) + " images, " + std::to_string(target.size()) +
                  " targets";
      return v;
    }
  }
  for (std::size_t a = 1; a <= N; ++a)
    for (std::size_t b = 1; a + b - 1 <= N; ++b)
      for (const auto& x : objs[a])
        for (const auto& y : objs[b])
          for (std::size_t i = 1; i <= a; ++i) {
            Obj lhs = phi(big.compose_object(x, i, y)), rhs = small.compose_object(phi(x), i, phi(y));
            if (lhs != rhs) {
              v.ok = false;
              v.message = "phi(" + x.str() + " o_" + std::to_string(i) + " " + y.str() + ") = " + lhs.str() + " but " +
                          rhs.str() + " in " + small.name();
              return v;
            }
          }
  return v;
}

// 1^k 0 1^l in T(N, max) goes to e_{k+1+l, k+1} in Dias.
inline Obj dias_of_max_word(const Obj& w) {
  auto xs = w.int_args();
  long long zero = -1;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (xs[k] == 0 && zero < 0) zero = static_cast<long long>(k);
    else if (xs[k] != 1) throw std::invalid_argument(w.str() + " is not of the form 1..101..1");
  }
  if (zero < 0) throw std::invalid_argument(w.str() + " has no 0");
  return Obj::tagged("e", static_cast<long long>(xs.size()), zero + 1);
}

inline EmbeddingVerdict dias_embedding_check(std::size_t N) {
  return check_embedding(t_construction(max_monoid()), {Obj::int_list("t", {0, 1}), Obj::int_list("t", {1, 0})},
                         dias_operad(), dias_of_max_word, N);
}

inline EmbeddingVerdict as_embedding_check(std::size_t N) {
  auto phi = [](const Obj& w) { return Obj::tagged("a", static_cast<long long>(w.length()) - 1); };
  return check_embedding(t_construction(trivial_monoid()), {Obj::int_list("t", {1, 1})}, as_operad(), phi, N);
}

// Motzkin words as the suboperad of T(N, +) generated by 00 and 010.
inline EmbeddingVerdict motz_embedding_check(std::size_t N) {
  auto phi = [](const Obj& w) { return Obj::int_list("motz", w.int_args()); };
  return check_embedding(t_construction(plus_monoid()), {Obj::int_list("t", {0, 0}), Obj::int_list("t", {0, 1, 0})},
                         motz_operad(), phi, N);
}

}  // namespace operadica
