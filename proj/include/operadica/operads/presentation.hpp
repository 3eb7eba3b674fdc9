#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "operadica/kernel/matrix.hpp"
#include "operadica/operads/operad.hpp"
#include "operadica/rewriting/rules_io.hpp"
#include "operadica/rewriting/tree_rewriting.hpp"

namespace operadica {

// Generators, relations, and optionally a realization (generator -> element of a
// concrete operad) and an orientation of the relations.
struct Presentation {
  std::string name;
  Signature signature;
  std::vector<TreePoly> relations;
  std::map<std::string, Obj> realization;
  std::optional<TreeRewriteSystem> orientation;

  bool binary() const { return signature.size() > 0 && signature.all_binary(); }
  bool quadratic() const {
    for (const auto& r : relations)
      for (const auto& [t, c] : r)
        if (t.degree() != 2) return false;
    return true;
  }

  void validate() const {
    for (const auto& r : relations) {
      if (r.empty()) throw std::invalid_argument(name + ": zero relation");
      std::size_t n = r.begin()->first.arity();
      for (const auto& [t, c] : r) {
        signature.check(t);
        if (t.arity() != n)
          throw std::invalid_argument(name + ": relation " + tree_poly_str(r) + " is not homogeneous in arity");
      }
    }
    for (const auto& [g, x] : realization)
      if (!signature.contains(g)) throw std::invalid_argument(name + ": realization of unknown generator '" + g + "'");
  }
};

inline Presentation presentation_from_json(const Json& j) {
  Presentation p;
  p.name = j.value("name", "");
  p.signature = signature_from_json(j.at("signature"));
  for (const auto& r : j.at("relations")) p.relations.push_back(tree_poly_from_json(r));
  if (j.contains("realization"))
    for (const auto& [g, text] : j.at("realization").items()) p.realization.emplace(g, Obj::parse(text.get<std::string>()));
  if (j.contains("rules")) p.orientation = rule_system_from_json(j);
  p.validate();
  return p;
}

inline Json presentation_to_json(const Presentation& p) {
  Json j;
  j["name"] = p.name;
  j["signature"] = signature_to_json(p.signature);
  Json rels = Json::array();
  for (const auto& r : p.relations) rels.push_back(tree_poly_to_json(r));
  j["relations"] = rels;
  if (!p.realization.empty()) {
    Json real = Json::object();
    for (const auto& [g, x] : p.realization) real[g] = x.str();
    j["realization"] = real;
  }
  if (p.orientation) {
    Json o = rule_system_to_json(*p.orientation);
    j["mode"] = o["mode"];
    j["rules"] = o["rules"];
  }
  return j;
}

inline Presentation load_presentation(const std::string& path) { return presentation_from_json(read_json_file(path)); }

// Rows of coefficients of polys over an explicit ordered basis of trees.
inline RationalMatrix tree_poly_matrix(const std::vector<TreePoly>& polys, const std::vector<Tree>& basis) {
  std::map<Tree, std::size_t> idx;
  for (std::size_t k = 0; k < basis.size(); ++k) idx.emplace(basis[k], k);
  RationalMatrix m{basis.size(), {}};
  for (const auto& p : polys) {
    SparseRow row;
    for (const auto& [t, c] : p) {
      auto it = idx.find(t);
      if (it == idx.end()) throw std::invalid_argument("tree " + t.str() + " is outside the basis");
      row[it->second] = c;
    }
    m.rows.push_back(std::move(row));
  }
  return m;
}

inline std::vector<TreePoly> matrix_tree_polys(const RationalMatrix& m, const std::vector<Tree>& basis) {
  std::vector<TreePoly> out;
  for (const auto& row : m.rows) {
    TreePoly p;
    for (const auto& [k, c] : row) p.add(basis[k], c);
    out.push_back(std::move(p));
  }
  return out;
}

inline std::vector<Tree> support_basis(const std::vector<TreePoly>& a, const std::vector<TreePoly>& b = {}) {
  std::set<Tree> s;
  for (const auto* v : {&a, &b})
    for (const auto& p : *v)
      for (const auto& [t, c] : p) s.insert(t);
  return {s.begin(), s.end()};
}

inline bool same_span(const std::vector<TreePoly>& a, const std::vector<TreePoly>& b) {
  auto basis = support_basis(a, b);
  return same_row_space(tree_poly_matrix(a, basis), tree_poly_matrix(b, basis));
}

// Degree-2 arity-3 trees over binary generators x1 < ... < xg: all (x o_1 y), then
// all (x o_2 y), each block in lexicographic (x, y) order. The pairing is +1 on
// matching o_1 trees, -1 on matching o_2 trees.
struct KoszulPairingBasis {
  std::vector<Tree> basis;
  RationalMatrix pairing;
};

inline KoszulPairingBasis koszul_pairing_basis(const Signature& sig) {
  if (!sig.all_binary() || sig.size() == 0) throw std::invalid_argument("the Koszul pairing needs binary generators");
  KoszulPairingBasis kb;
  for (int slot = 1; slot <= 2; ++slot)
    for (const auto& x : sig.generators())
      for (const auto& y : sig.generators()) {
        Tree inner = Tree::corolla(y.name, 2);
        kb.basis.push_back(slot == 1 ? Tree::node(x.name, {inner, Tree::leaf()}) : Tree::node(x.name, {Tree::leaf(), inner}));
      }
  std::size_t d = kb.basis.size();
  kb.pairing = RationalMatrix{d, std::vector<SparseRow>(d)};
  for (std::size_t k = 0; k < d; ++k) kb.pairing.rows[k][k] = k < d / 2 ? 1 : -1;
  return kb;
}

// Canonical relation space: rref over the Koszul basis (binary quadratic) or over
// the sorted support otherwise.
inline std::vector<TreePoly> canonical_relations(const Presentation& p) {
  std::vector<Tree> basis = (p.binary() && p.quadratic()) ? koszul_pairing_basis(p.signature).basis : support_basis(p.relations);
  return matrix_tree_polys(rref(tree_poly_matrix(p.relations, basis)), basis);
}

inline Presentation koszul_dual(const Presentation& p) {
  if (!p.binary() || !p.quadratic())
    throw std::invalid_argument(p.name + ": the Koszul dual needs a binary quadratic presentation");
  auto kb = koszul_pairing_basis(p.signature);
  RationalMatrix r = tree_poly_matrix(p.relations, kb.basis);
  RationalMatrix perp = mat_annihilator(r, kb.pairing);
  std::size_t g = p.signature.size();
  if (rank(r) + perp.rows.size() != 2 * g * g)
    throw std::logic_error("dimension law violated: dim R + dim R^perp != 2g^2");
  Presentation d;
  d.name = p.name + "!";
  d.signature = p.signature;
  d.relations = matrix_tree_polys(perp, kb.basis);
  return d;
}

// Largest arity of a tree of degree <= 2l - 1, which bounds the confluence check.
inline std::size_t confluence_arity_bound(const TreeRewriteSystem& r) {
  std::size_t l = r.degree(), amax = 1;
  for (const auto& g : r.signature().generators()) amax = std::max(amax, g.arity);
  return l == 0 ? 1 : 1 + (2 * l - 1) * (amax - 1);
}

struct ConvergenceReport {
  TerminationVerdict<Tree> termination;
  std::optional<ConfluenceVerdict<Tree, TreePoly>> confluence;
  bool convergent() const { return termination.terminating && confluence && confluence->confluent; }
  std::string summary() const {
    if (!termination.terminating) return "not terminating: " + termination.reason;
    if (!confluence->confluent) {
      std::string s = "not confluent: " + confluence->witness->str() + " has normal forms";
      for (const auto& nf : confluence->normal_forms) s += " {" + tree_poly_str(nf) + "}";
      return s;
    }
    return "convergent (" + termination.reason + "; " + confluence->method + ")";
  }
};

inline ConvergenceReport certify_convergence(const TreeRewriteSystem& r, unsigned jobs = 1) {
  ConvergenceReport rep;
  rep.termination = r.certify_termination(confluence_arity_bound(r));
  if (rep.termination.terminating) rep.confluence = r.check_confluence(rep.termination, jobs);
  return rep;
}

inline void require_orientation_of(const Presentation& p, const TreeRewriteSystem& r) {
  std::vector<TreePoly> rows;
  for (const auto& rule : r.rules()) rows.push_back(TreePoly(rule.lhs) - rule.rhs);
  for (const auto& g : r.signature().generators())
    if (!p.signature.contains(g.name) || p.signature.arity(g.name) != g.arity)
      throw std::invalid_argument("orientation does not present R: generator '" + g.name + "' differs");
  if (!same_span(rows, p.relations)) throw std::invalid_argument("orientation does not present R");
}

// Quotient FO(G)/<R> realized on the normal forms of a convergent orientation:
// compose by grafting, then rewrite to the normal form.
inline Operad realize_quotient(const Presentation& p, const TreeRewriteSystem& orientation, unsigned jobs = 1) {
  require_orientation_of(p, orientation);
  auto rep = certify_convergence(orientation, jobs);
  if (!rep.convergent()) throw std::invalid_argument(p.name + ": orientation is " + rep.summary());
  auto rs = std::make_shared<TreeRewriteSystem>(orientation);
  GradedCollection carrier(
      "NF(" + p.name + ")",
      [rs](std::size_t n) {
        std::vector<Obj> out;
        if (n == 0) return out;
        for (const auto& t : rs->normal_forms_of_arity(n)) out.push_back(t.to_obj());
        return out;
      },
      [rs](const Obj& o) -> long long {
        Tree t = Tree::from_obj(o);
        rs->signature().check(t);
        return static_cast<long long>(t.arity());
      });
  auto compose = [rs](const Obj& x, std::size_t i, const Obj& y) {
    TreePoly nf = rs->normal_form(graft_partial(Tree::from_obj(x), i, Tree::from_obj(y)));
    return nf.map_keys([](const Tree& t) { return t.to_obj(); });
  };
  bool set_like = orientation.mode() == RuleMode::set;
  return Operad(p.name, carrier, compose, Tree::leaf().to_obj(), set_like);
}

// Orientations obtained by choosing one tree of each relation as left side, tried in
// order: o_1-rooted trees first, then larger trees first.
struct OrientationAttempt {
  std::vector<Tree> lhs;
  std::string verdict;
  bool convergent = false;
};

struct OrientationSearch {
  std::optional<TreeRewriteSystem> found;
  std::vector<OrientationAttempt> attempts;
};

inline TreeRewriteSystem orient_relations(const Presentation& p, const std::vector<Tree>& lhs) {
  TreeRewriteSystem r(p.signature, RuleMode::linear);
  for (std::size_t k = 0; k < p.relations.size(); ++k) {
    const TreePoly& rel = p.relations[k];
    Scalar c = rel.coefficient(lhs[k]);
    TreePoly rhs;
    for (const auto& [t, a] : rel)
      if (t != lhs[k]) rhs.add(t, -a / c);
    r.add_rule(lhs[k], rhs);
  }
  return r;
}

inline OrientationSearch search_orientation(const Presentation& p, unsigned jobs = 1) {
  std::vector<std::vector<Tree>> cands;
  for (const auto& rel : p.relations) {
    std::vector<Tree> ts;
    for (const auto& [t, c] : rel) ts.push_back(t);
    auto first_inner = [](const Tree& t) { return !t.is_leaf() && !t.child(1).is_leaf(); };
    std::stable_sort(ts.begin(), ts.end(), [&](const Tree& a, const Tree& b) {
      if (first_inner(a) != first_inner(b)) return first_inner(a);
      return b < a;
    });
    cands.push_back(std::move(ts));
  }
  OrientationSearch out;
  std::vector<std::size_t> pick(cands.size(), 0);
  for (;;) {
    std::vector<Tree> lhs;
    for (std::size_t k = 0; k < cands.size(); ++k) lhs.push_back(cands[k][pick[k]]);
    OrientationAttempt a{lhs, "", false};
    if (std::set<Tree>(lhs.begin(), lhs.end()).size() != lhs.size()) {
      a.verdict = "two rules share a left side";
    } else {
      auto r = orient_relations(p, lhs);
      auto rep = certify_convergence(r, jobs);
      a.verdict = rep.summary();
      a.convergent = rep.convergent();
      if (a.convergent) {
        out.attempts.push_back(a);
        out.found = r;
        return out;
      }
    }
    out.attempts.push_back(a);
    std::size_t k = cands.size();
    while (k > 0 && ++pick[k - 1] == cands[k - 1].size()) pick[--k] = 0;
    if (k == 0) return out;
  }
}

struct PresentationVerdict {
  bool ok = true;
  std::string clause;
  std::string message;
  std::vector<std::size_t> dims;
  std::vector<std::size_t> normal_forms;
};

// Bounded presentation check: (i) the generators generate O up to arity N, (ii) every
// relation evaluates to 0, (iii) the orientation terminates up to arity N and has
// dim O(n) normal forms in each arity n <= N.
inline PresentationVerdict verify_presentation(const Operad& op, const Presentation& p, std::size_t N) {
  if (p.realization.empty()) throw std::invalid_argument(p.name + ": presentation has no realization map");
  if (!p.orientation) throw std::invalid_argument(p.name + ": presentation has no orientation");
  if (!op.combinatorial()) throw std::domain_error(op.name() + " is not combinatorial: " + op.why_not_combinatorial());
  PresentationVerdict v;
  auto fail = [&](const std::string& clause, const std::string& msg) {
    v.ok = false;
    v.clause = clause;
    v.message = msg;
    return v;
  };
  std::vector<Obj> gens;
  for (const auto& g : p.signature.generators()) {
    auto it = p.realization.find(g.name);
    if (it == p.realization.end()) return fail("generation", "generator '" + g.name + "' has no realization");
    if (op.arity(it->second) != g.arity)
      return fail("generation", "generator '" + g.name + "' realized by " + it->second.str() + " of another arity");
    gens.push_back(it->second);
  }
  auto spans = generated_spans(op, gens, N);
  for (std::size_t n = 1; n <= N; ++n) {
    const auto& objs = op.carrier().enumerate_ref(n);
    v.dims.push_back(objs.size());
    if (spans[n].size() != objs.size()) {
      std::string missing;
      for (const auto& x : objs)
        if (!spans[n].contains(ObjPoly(x))) {
          missing = x.str();
          break;
        }
      return fail("generation", "generators span " + std::to_string(spans[n].size()) + " of " +
                                    std::to_string(objs.size()) + " dimensions at arity " + std::to_string(n) +
                                    "; missing " + missing);
    }
  }
  for (const auto& rel : p.relations) {
    ObjPoly e = evaluate(op, rel, p.realization);
    if (!e.empty()) return fail("relations", "relation " + tree_poly_str(rel) + " evaluates to " + obj_poly_str(e));
  }
  auto term = p.orientation->check_termination(N);
  if (!term.terminating)
    return fail("normal forms", "orientation " + term.reason + " through " + (term.cycle.empty() ? "" : term.cycle[0].str()));
  for (std::size_t n = 1; n <= N; ++n) {
    std::size_t c = p.orientation->normal_forms_of_arity(n).size();
    v.normal_forms.push_back(c);
    if (c != v.dims[n - 1])
      return fail("normal forms", std::to_string(c) + " normal forms at arity " + std::to_string(n) + " but dim " +
                                      std::to_string(v.dims[n - 1]));
  }
  return v;
}

}  // namespace operadica
