#pragma once

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "operadica/rewriting/tree_rewriting.hpp"

namespace operadica {

using Json = nlohmann::ordered_json;

inline Signature signature_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("\"signature\" must be an array");
  Signature sig;
  for (const auto& g : j) {
    Generator gen;
    gen.name = g.at("name").get<std::string>();
    gen.arity = g.at("arity").get<std::size_t>();
    if (g.contains("out")) gen.out = g.at("out").get<int>();
    if (g.contains("in")) gen.in = g.at("in").get<std::vector<int>>();
    sig.add(std::move(gen));
  }
  return sig;
}

inline Json signature_to_json(const Signature& sig) {
  Json arr = Json::array();
  for (const auto& g : sig.generators()) {
    Json e{{"name", g.name}, {"arity", g.arity}};
    if (g.out) {
      e["out"] = *g.out;
      e["in"] = g.in;
    }
    arr.push_back(e);
  }
  return arr;
}

// "(a (a * *) *) - 2 (a * (a * *)) + 1/2 *": signed terms, each an optional rational
// coefficient followed by a tree. Signs only count outside parentheses.
inline TreePoly parse_tree_poly(const std::string& text) {
  TreePoly p;
  std::size_t i = 0, n = text.size();
  auto skip = [&] { while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
  bool first = true;
  for (;;) {
    skip();
    if (i == n) break;
    Scalar sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      if (text[i] == '-') sign = -1;
      ++i;
      skip();
    } else if (!first) {
      throw std::invalid_argument("cannot parse polynomial '" + text + "' at offset " + std::to_string(i) + ": expected + or -");
    }
    first = false;
    Scalar c = 1;
    if (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
      std::size_t j = i;
      while (j < n && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '/')) ++j;
      c = parse_scalar(text.substr(i, j - i));
      i = j;
      skip();
    }
    std::size_t j = i;
    int depth = 0;
    while (j < n) {
      char ch = text[j];
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      if (depth == 0 && (ch == '+' || ch == '-')) break;
      ++j;
    }
    if (j == i) throw std::invalid_argument("cannot parse polynomial '" + text + "': missing tree at offset " + std::to_string(i));
    Scalar coef = sign * c;
    p.add(Tree::parse(text.substr(i, j - i)), coef);
    i = j;
  }
  return p;
}

// [{"coef": "1/2", "tree": "(a * *)"}, ...], or a polynomial string.
inline TreePoly tree_poly_from_json(const Json& j) {
  if (j.is_string()) return parse_tree_poly(j.get<std::string>());
  if (!j.is_array()) throw std::invalid_argument("expected a tree or a list of {coef, tree} terms");
  TreePoly p;
  for (const auto& term : j) {
    Scalar c = 1;
    if (term.contains("coef")) {
      const auto& cj = term.at("coef");
      c = cj.is_string() ? parse_scalar(cj.get<std::string>()) : Scalar(cj.get<long>());
    }
    p.add(Tree::parse(term.at("tree").get<std::string>()), c);
  }
  return p;
}

inline Json tree_poly_to_json(const TreePoly& p) {
  Json arr = Json::array();
  for (const auto& [t, c] : p) arr.push_back(Json{{"coef", c.get_str()}, {"tree", t.str()}});
  return arr;
}

inline TreeRewriteSystem rule_system_from_json(const Json& j) {
  Signature sig = signature_from_json(j.at("signature"));
  std::string mode = j.value("mode", "set");
  if (mode != "set" && mode != "linear") throw std::invalid_argument("unknown rule mode '" + mode + "'");
  TreeRewriteSystem r(sig, mode == "set" ? RuleMode::set : RuleMode::linear);
  for (const auto& rule : j.at("rules"))
    r.add_rule(Tree::parse(rule.at("lhs").get<std::string>()), tree_poly_from_json(rule.at("rhs")));
  return r;
}

inline Json rule_system_to_json(const TreeRewriteSystem& r) {
  Json rules = Json::array();
  for (const auto& rule : r.rules())
    rules.push_back(Json{{"lhs", rule.lhs.str()}, {"rhs", tree_poly_to_json(rule.rhs)}});
  return Json{{"signature", signature_to_json(r.signature())},
              {"mode", r.mode() == RuleMode::set ? "set" : "linear"},
              {"rules", rules}};
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

}  // namespace operadica
