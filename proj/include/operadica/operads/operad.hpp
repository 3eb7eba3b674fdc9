#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "operadica/collections/graded_collection.hpp"
#include "operadica/collections/operations.hpp"
#include "operadica/collections/poly.hpp"
#include "operadica/kernel/power_series.hpp"
#include "operadica/trees/enumerate.hpp"
#include "operadica/trees/grafting.hpp"

namespace operadica {

using ObjPoly = Poly<Obj>;

inline std::string obj_poly_str(const ObjPoly& p) {
  return p.str([](const Obj& o) { return o.str(); });
}

// An operad on the linear span of a graded collection, given by its partial
// compositions on basis objects. Colored operads carry one unit per color and a
// predicate telling which compositions are defined.
class Operad {
 public:
  using Compose = std::function<ObjPoly(const Obj&, std::size_t, const Obj&)>;
  using Composable = std::function<bool(const Obj&, std::size_t, const Obj&)>;
  using Sampler = std::function<std::optional<Obj>(std::size_t, std::mt19937_64&)>;

  Operad(std::string name, GradedCollection carrier, Compose compose, Obj unit, bool set_operad = true)
      : name_(std::move(name)), carrier_(std::move(carrier)), compose_(std::move(compose)),
        units_{std::move(unit)}, set_operad_(set_operad) {}

  const std::string& name() const { return name_; }
  const GradedCollection& carrier() const { return carrier_; }
  bool is_set_operad() const { return set_operad_; }
  bool is_colored() const { return static_cast<bool>(composable_); }
  const Obj& unit() const { return units_.front(); }
  const std::vector<Obj>& units() const { return units_; }
  std::size_t arity(const Obj& x) const { return static_cast<std::size_t>(carrier_.size_of(x)); }

  // Operads whose components are infinite enumerate only a finite window.
  bool combinatorial() const { return why_not_combinatorial_.empty(); }
  const std::string& why_not_combinatorial() const { return why_not_combinatorial_; }

  Operad& set_units(std::vector<Obj> units) {
    if (units.empty()) throw std::invalid_argument("an operad needs at least one unit");
    units_ = std::move(units);
    return *this;
  }
  Operad& set_composable(Composable f) {
    composable_ = std::move(f);
    return *this;
  }
  Operad& set_sampler(Sampler s) {
    sampler_ = std::move(s);
    return *this;
  }
  Operad& set_not_combinatorial(std::string why) {
    why_not_combinatorial_ = std::move(why);
    return *this;
  }

  bool composable(const Obj& x, std::size_t i, const Obj& y) const {
    return !composable_ || composable_(x, i, y);
  }

  ObjPoly compose(const Obj& x, std::size_t i, const Obj& y) const {
    std::size_t n = arity(x);
    if (i < 1 || i > n)
      throw std::out_of_range(name_ + ": composition index " + std::to_string(i) + " out of range [1, " +
                              std::to_string(n) + "] for " + x.str());
    return compose_(x, i, y);
  }

  // Bilinear extension.
  ObjPoly compose(const ObjPoly& f, std::size_t i, const ObjPoly& g) const {
    ObjPoly r;
    for (const auto& [x, a] : f)
      for (const auto& [y, b] : g) {
        Scalar ab = a * b;
        r.add(compose(x, i, y), ab);
      }
    return r;
  }

  // Set-operads only: the single object x o_i y.
  Obj compose_object(const Obj& x, std::size_t i, const Obj& y) const {
    ObjPoly r = compose(x, i, y);
    if (!r.is_basis_element())
      throw std::logic_error(name_ + ": composition of " + x.str() + " and " + y.str() + " is not a single object");
    return r.sole_key();
  }

  std::optional<Obj> sample(std::size_t n, std::mt19937_64& rng) const {
    if (sampler_) return sampler_(n, rng);
    const auto& objs = carrier_.enumerate_ref(n);
    if (objs.empty()) return std::nullopt;
    std::uniform_int_distribution<std::size_t> d(0, objs.size() - 1);
    return objs[d(rng)];
  }

 private:
  std::string name_;
  GradedCollection carrier_;
  Compose compose_;
  std::vector<Obj> units_;
  bool set_operad_;
  Composable composable_;
  Sampler sampler_;
  std::string why_not_combinatorial_;
};

inline std::size_t poly_arity(const Operad& op, const ObjPoly& f) {
  if (f.empty()) throw std::invalid_argument("the zero element has no arity");
  return op.arity(f.begin()->first);
}

// x o [y1, ..., yn] = (...((x o_n yn) o_{n-1} y_{n-1}) ...) o_1 y1.
inline ObjPoly full_composition(const Operad& op, const ObjPoly& x, const std::vector<ObjPoly>& ys) {
  if (x.empty()) return x;
  std::size_t n = poly_arity(op, x);
  if (ys.size() != n)
    throw std::invalid_argument("full composition of an element of arity " + std::to_string(n) + " with " +
                                std::to_string(ys.size()) + " elements");
  ObjPoly r = x;
  for (std::size_t k = n; k >= 1; --k) r = op.compose(r, k, ys[k - 1]);
  return r;
}

inline ObjPoly full_composition(const Operad& op, const Obj& x, const std::vector<Obj>& ys) {
  std::vector<ObjPoly> ps;
  for (const auto& y : ys) ps.emplace_back(y);
  return full_composition(op, ObjPoly(x), ps);
}

// x o_i y recovered as x o [1, ..., y, ..., 1].
inline ObjPoly partial_from_full(const Operad& op, const Obj& x, std::size_t i, const Obj& y) {
  std::size_t n = op.arity(x);
  if (i < 1 || i > n) throw std::out_of_range("composition index out of range");
  std::vector<Obj> ys(n, op.unit());
  ys[i - 1] = y;
  return full_composition(op, x, ys);
}

struct AxiomVerdict {
  bool ok = true;
  std::string law;
  std::string message;
  std::size_t checks = 0;
  std::size_t sampled = 0;  // random triples actually drawn
};

namespace detail {

class AxiomChecker {
 public:
  explicit AxiomChecker(const Operad& op) : op_(op) {}

  AxiomVerdict verdict;

  bool fail(const std::string& law, const std::string& msg) {
    verdict.ok = false;
    verdict.law = law;
    verdict.message = msg;
    return false;
  }

  // (x o_i y) o_{i+j-1} z = x o_i (y o_j z)
  bool series(const Obj& x, std::size_t i, const Obj& y, std::size_t j, const Obj& z) {
    if (!op_.composable(x, i, y) || !op_.composable(y, j, z)) return true;
    ++verdict.checks;
    return guarded("series associativity", [&] {
      ObjPoly lhs = op_.compose(op_.compose(x, i, y), i + j - 1, ObjPoly(z));
      ObjPoly rhs = op_.compose(ObjPoly(x), i, op_.compose(y, j, z));
      if (lhs == rhs) return true;
      return fail("series associativity", "(" + x.str() + " o_" + std::to_string(i) + " " + y.str() + ") o_" +
                                              std::to_string(i + j - 1) + " " + z.str() + " = " + obj_poly_str(lhs) +
                                              " but " + x.str() + " o_" + std::to_string(i) + " (" + y.str() + " o_" +
                                              std::to_string(j) + " " + z.str() + ") = " + obj_poly_str(rhs));
    });
  }

  // (x o_i y) o_{j+m-1} z = (x o_j z) o_i y for i < j
  bool parallel(const Obj& x, std::size_t i, const Obj& y, std::size_t j, const Obj& z) {
    if (!op_.composable(x, i, y) || !op_.composable(x, j, z)) return true;
    ++verdict.checks;
    std::size_t m = op_.arity(y);
    return guarded("parallel associativity", [&] {
      ObjPoly lhs = op_.compose(op_.compose(x, i, y), j + m - 1, ObjPoly(z));
      ObjPoly rhs = op_.compose(op_.compose(x, j, z), i, ObjPoly(y));
      if (lhs == rhs) return true;
      return fail("parallel associativity", "(" + x.str() + " o_" + std::to_string(i) + " " + y.str() + ") o_" +
                                                std::to_string(j + m - 1) + " " + z.str() + " = " + obj_poly_str(lhs) +
                                                " but (" + x.str() + " o_" + std::to_string(j) + " " + z.str() +
                                                ") o_" + std::to_string(i) + " " + y.str() + " = " + obj_poly_str(rhs));
    });
  }

  bool units(const Obj& x) {
    std::size_t n = op_.arity(x);
    for (const auto& e : op_.units()) {
      if (op_.composable(e, 1, x)) {
        ++verdict.checks;
        bool ok = guarded("unit", [&] {
          ObjPoly r = op_.compose(e, 1, x);
          return r == ObjPoly(x) || fail("unit", e.str() + " o_1 " + x.str() + " = " + obj_poly_str(r));
        });
        if (!ok) return false;
      }
      for (std::size_t i = 1; i <= n; ++i) {
        if (!op_.composable(x, i, e)) continue;
        ++verdict.checks;
        bool ok = guarded("unit", [&] {
          ObjPoly r = op_.compose(x, i, e);
          return r == ObjPoly(x) ||
                 fail("unit", x.str() + " o_" + std::to_string(i) + " " + e.str() + " = " + obj_poly_str(r));
        });
        if (!ok) return false;
      }
    }
    return true;
  }

  bool all_instances(const Obj& x, const Obj& y, const Obj& z) {
    std::size_t n = op_.arity(x), m = op_.arity(y);
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= m; ++j)
        if (!series(x, i, y, j, z)) return false;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j)
        if (!parallel(x, i, y, j, z)) return false;
    return true;
  }

 private:
  template <typename F>
  bool guarded(const std::string& law, F f) {
    try {
      return f();
    } catch (const std::exception& e) {
      return fail(law, std::string("composition failed: ") + e.what());
    }
  }

  const Operad& op_;
};

}  // namespace detail

// Exhaustive check of the unit, series and parallel laws on all objects whose
// compositions stay within arity N, then `samples` random triples within arity
// `sample_arity` (one random instance of each law per triple).
inline AxiomVerdict check_axioms(const Operad& op, std::size_t N, std::size_t samples = 0,
                                 std::size_t sample_arity = 0, std::uint64_t seed = 1) {
  detail::AxiomChecker ck(op);
  for (std::size_t a = 1; a <= N; ++a)
    for (const auto& x : op.carrier().enumerate_ref(a))
      if (!ck.units(x)) return ck.verdict;
  for (std::size_t a = 1; a <= N; ++a)
    for (std::size_t b = 1; a + b - 1 <= N; ++b)
      for (std::size_t c = 1; a + b + c - 2 <= N; ++c) {
        const auto& xs = op.carrier().enumerate_ref(a);
        const auto& ys = op.carrier().enumerate_ref(b);
        const auto& zs = op.carrier().enumerate_ref(c);
        for (const auto& x : xs)
          for (const auto& y : ys)
            for (const auto& z : zs)
              if (!ck.all_instances(x, y, z)) return ck.verdict;
      }
  if (samples == 0) return ck.verdict;
  std::size_t M = std::max<std::size_t>(sample_arity, 3);
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  for (std::size_t s = 0, tries = 0; s < samples && tries < 50 * samples; ++tries) {
    std::size_t a = pick(1, M - 2);
    std::size_t b = pick(1, M - a);
    std::size_t c = pick(1, M + 2 - a - b);
    auto x = op.sample(a, rng), y = op.sample(b, rng), z = op.sample(c, rng);
    if (!x || !y || !z) continue;
    std::size_t i = pick(1, a), j = pick(1, b);
    if (!op.composable(*x, i, *y) || !op.composable(*y, j, *z)) continue;
    ck.verdict.sampled = ++s;
    if (!ck.units(*x) || !ck.series(*x, i, *y, j, *z)) return ck.verdict;
    if (a >= 2) {
      std::size_t p = pick(1, a - 1);
      std::size_t q = pick(p + 1, a);
      if (!ck.parallel(*x, p, *y, q, *z)) return ck.verdict;
    }
  }
  return ck.verdict;
}

// Sum of dim O(n) t^n for n = 1..N.
inline PowerSeries hilbert(const Operad& op, std::size_t N) {
  if (!op.combinatorial()) throw std::domain_error(op.name() + " is not combinatorial: " + op.why_not_combinatorial());
  PowerSeries s(N);
  for (std::size_t n = 1; n <= N; ++n) s[n] = static_cast<unsigned long>(op.carrier().count(n));
  return s;
}

inline PowerSeries hilbert(const std::vector<std::size_t>& dims_from_one) {
  PowerSeries s(dims_from_one.size());
  for (std::size_t n = 0; n < dims_from_one.size(); ++n) s[n + 1] = static_cast<unsigned long>(dims_from_one[n]);
  return s;
}

// Echelon basis of a span of polynomials over Obj, keyed by leading object.
class ObjSpan {
 public:
  // Returns the reduction of p modulo the span (zero iff p lies in it).
  ObjPoly reduce(ObjPoly p) const {
    ObjPoly rest;
    while (!p.empty()) {
      Obj k = p.leading_key();
      Scalar c = p.coefficient(k);
      auto it = rows_.find(k);
      if (it == rows_.end()) {
        rest.add(k, c);
        p.erase(k);
      } else {
        Scalar f = -c;
        p.add(it->second, f);
      }
    }
    return rest;
  }

  bool insert(const ObjPoly& p) {
    ObjPoly r = reduce(p);
    if (r.empty()) return false;
    Obj k = r.leading_key();
    Scalar inv = 1 / r.coefficient(k);
    rows_.emplace(k, r.scaled(inv));
    return true;
  }

  bool contains(const ObjPoly& p) const { return reduce(p).empty(); }
  std::size_t size() const { return rows_.size(); }
  std::vector<ObjPoly> basis() const {
    std::vector<ObjPoly> out;
    for (const auto& [k, r] : rows_) out.push_back(r);
    return out;
  }

 private:
  std::map<Obj, ObjPoly> rows_;
};

// Span of the suboperad generated by gens (plus the unit), arity by arity up to N:
// every generated element of degree >= 1 is some generated x composed with a generator.
inline std::vector<ObjSpan> generated_spans(const Operad& op, const std::vector<Obj>& gens, std::size_t N) {
  std::vector<ObjSpan> spans(N + 1);
  if (N >= 1) spans[1].insert(ObjPoly(op.unit()));
  std::vector<std::pair<Obj, std::size_t>> g;
  for (const auto& x : gens) g.emplace_back(x, op.arity(x));
  for (std::size_t n = 1; n <= N; ++n) {
    for (const auto& [x, k] : g)
      if (k == n) spans[n].insert(ObjPoly(x));
    for (bool grew = true; grew;) {
      grew = false;
      for (const auto& [x, k] : g) {
        if (k > n) continue;
        std::size_t src = n - k + 1;
        for (const auto& b : spans[src].basis())
          for (std::size_t i = 1; i <= src; ++i)
            if (spans[n].insert(op.compose(b, i, ObjPoly(x))) && k == 1) grew = true;
      }
    }
  }
  return spans;
}

// The free operad: syntax trees graded by arity, composed by grafting.
inline Operad free_operad(const Signature& sig) {
  auto en = std::make_shared<detail::TreeEnumerator>(sig, TreeGrading::arity);
  auto mu = std::make_shared<std::mutex>();
  GradedCollection carrier(
      "FO", [en, mu](std::size_t n) {
        std::lock_guard<std::mutex> lock(*mu);
        std::vector<Obj> out;
        for (const auto& t : en->level(n)) out.push_back(t.to_obj());
        return out;
      },
      [sig](const Obj& o) -> long long {
        Tree t = Tree::from_obj(o);
        sig.check(t);
        return static_cast<long long>(t.arity());
      });
  auto compose = [](const Obj& x, std::size_t i, const Obj& y) {
    return ObjPoly(graft_partial(Tree::from_obj(x), i, Tree::from_obj(y)).to_obj());
  };
  return Operad("FO", carrier, compose, Tree::leaf().to_obj());
}

// ev(leaf) = 1, ev(x(t1, ..., tk)) = label(x) o [ev(t1), ..., ev(tk)].
inline ObjPoly evaluate(const Operad& op, const Tree& t, const std::function<Obj(const std::string&)>& label) {
  if (t.is_leaf()) return ObjPoly(op.unit());
  Obj x = label(t.symbol());
  if (op.arity(x) != t.root_arity())
    throw std::invalid_argument("label '" + t.symbol() + "' = " + x.str() + " has arity " +
                                std::to_string(op.arity(x)) + " but its node has " + std::to_string(t.root_arity()) +
                                " children");
  std::vector<ObjPoly> kids;
  for (const auto& c : t.children()) kids.push_back(evaluate(op, c, label));
  return full_composition(op, ObjPoly(x), kids);
}

inline ObjPoly evaluate(const Operad& op, const Tree& t, const std::map<std::string, Obj>& labels) {
  return evaluate(op, t, [&](const std::string& s) {
    auto it = labels.find(s);
    if (it == labels.end()) throw std::invalid_argument("no element for label '" + s + "'");
    return it->second;
  });
}

inline ObjPoly evaluate(const Operad& op, const Poly<Tree>& f, const std::map<std::string, Obj>& labels) {
  ObjPoly r;
  for (const auto& [t, c] : f) r.add(evaluate(op, t, labels), c);
  return r;
}

// Componentwise composition on (had x1 ... xk).
inline Operad hadamard_operad(const std::vector<Operad>& ops) {
  if (ops.empty()) throw std::invalid_argument("hadamard product of no operads");
  std::string name = "Hadamard(";
  for (std::size_t k = 0; k < ops.size(); ++k) {
    if (!ops[k].is_set_operad() || ops[k].is_colored())
      throw std::invalid_argument("hadamard product needs uncolored set-operads; " + ops[k].name() + " is not one");
    name += (k ? "," : "") + ops[k].name();
  }
  name += ")";
  GradedCollection carrier(
      name,
      [ops](std::size_t n) {
        std::vector<const std::vector<Obj>*> slots;
        for (const auto& o : ops) slots.push_back(&o.carrier().enumerate_ref(n));
        std::vector<Obj> out;
        detail::for_each_tuple(slots, [&](const std::vector<Obj>& xs) { out.push_back(Obj::tagged_list("had", xs)); });
        return out;
      },
      [ops](const Obj& o) -> long long {
        if (!o.has_tag("had") || o.length() != ops.size() + 1) throw std::invalid_argument("not a hadamard tuple: " + o.str());
        long long n = ops[0].carrier().size_of(o[1]);
        for (std::size_t k = 1; k < ops.size(); ++k)
          if (ops[k].carrier().size_of(o[k + 1]) != n) throw std::invalid_argument("components of unequal arity: " + o.str());
        return n;
      });
  auto compose = [ops](const Obj& x, std::size_t i, const Obj& y) {
    Obj::List out;
    for (std::size_t k = 0; k < ops.size(); ++k) out.push_back(ops[k].compose_object(x[k + 1], i, y[k + 1]));
    return ObjPoly(Obj::tagged_list("had", out));
  };
  Obj::List units;
  for (const auto& o : ops) units.push_back(o.unit());
  Operad h(name, carrier, compose, Obj::tagged_list("had", units));
  h.set_sampler([ops](std::size_t n, std::mt19937_64& rng) -> std::optional<Obj> {
    Obj::List xs;
    for (const auto& o : ops) {
      auto x = o.sample(n, rng);
      if (!x) return std::nullopt;
      xs.push_back(*x);
    }
    return Obj::tagged_list("had", xs);
  });
  for (const auto& o : ops)
    if (!o.combinatorial()) h.set_not_combinatorial(o.why_not_combinatorial());
  return h;
}

// Bud operad on m colors: objects (col a x (u1 ... un)); (a, x, u) o_i (b, y, v) is
// defined when u(i) = b and equals (a, x o_i y, u with v substituted at i).
inline Operad bud_operad(const Operad& op, long long m) {
  if (!op.is_set_operad() || op.is_colored()) throw std::invalid_argument("bud construction needs an uncolored set-operad");
  auto carrier = derive_unary(UnaryKind::Coloration(m), op.carrier());
  auto compose = [op](const Obj& x, std::size_t i, const Obj& y) {
    const auto& u = x[3].items();
    long long want = u.at(i - 1).as_int(), got = y[1].as_int();
    if (want != got)
      throw std::invalid_argument("color mismatch at input " + std::to_string(i) + ": expected " +
                                  std::to_string(want) + ", got " + std::to_string(got));
    Obj::List w(u.begin(), u.begin() + static_cast<long>(i - 1));
    const auto& v = y[3].items();
    w.insert(w.end(), v.begin(), v.end());
    w.insert(w.end(), u.begin() + static_cast<long>(i), u.end());
    return ObjPoly(Obj::tagged("col", x[1], op.compose_object(x[2], i, y[2]), Obj::list(w)));
  };
  Operad b("Bud" + std::to_string(m) + "(" + op.name() + ")", carrier, compose, Obj());
  std::vector<Obj> units;
  for (long long a = 1; a <= m; ++a) units.push_back(Obj::tagged("col", a, op.unit(), Obj::list({Obj::integer(a)})));
  b.set_units(units);
  b.set_composable([](const Obj& x, std::size_t i, const Obj& y) {
    const auto& u = x[3].items();
    return i >= 1 && i <= u.size() && u[i - 1] == y[1];
  });
  b.set_sampler([op, m](std::size_t n, std::mt19937_64& rng) -> std::optional<Obj> {
    auto x = op.sample(n, rng);
    if (!x) return std::nullopt;
    std::uniform_int_distribution<long long> c(1, m);
    Obj::List u;
    for (std::size_t k = 0; k < n; ++k) u.push_back(Obj::integer(c(rng)));
    return Obj::tagged("col", c(rng), *x, Obj::list(u));
  });
  if (!op.combinatorial()) b.set_not_combinatorial(op.why_not_combinatorial());
  return b;
}

}  // namespace operadica
