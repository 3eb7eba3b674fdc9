#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "operadica/series/paths.hpp"
#include "operadica/series/series.hpp"
#include "operadica/zoo/classic.hpp"
#include "operadica/zoo/nct.hpp"

namespace operadica {

// Right-hand sides of series equations. Unknowns are referred to by index.
struct SeriesExpr {
  enum class Kind { Constant, Unknown, Sum, Extension, Compose, Odot };
  Kind kind = Kind::Constant;
  std::optional<CollectionSeries> constant;
  std::size_t unknown = 0;
  std::vector<SeriesExpr> args;
  std::shared_ptr<GradedProduct> product;
  std::shared_ptr<Operad> op;
  Obj x;

  static SeriesExpr of(const CollectionSeries& s) {
    SeriesExpr e;
    e.constant = s;
    return e;
  }
  static SeriesExpr var(std::size_t i) {
    SeriesExpr e;
    e.kind = Kind::Unknown;
    e.unknown = i;
    return e;
  }
  static SeriesExpr sum(std::vector<SeriesExpr> terms) {
    SeriesExpr e;
    e.kind = Kind::Sum;
    e.args = std::move(terms);
    return e;
  }
  static SeriesExpr extension(GradedProduct p, std::vector<SeriesExpr> factors) {
    SeriesExpr e;
    e.kind = Kind::Extension;
    e.product = std::make_shared<GradedProduct>(std::move(p));
    e.args = std::move(factors);
    return e;
  }
  // x o [g1, ..., gn]
  static SeriesExpr compose(const Operad& op, Obj x, std::vector<SeriesExpr> gs) {
    SeriesExpr e;
    e.kind = Kind::Compose;
    e.op = std::make_shared<Operad>(op);
    e.x = std::move(x);
    e.args = std::move(gs);
    return e;
  }
  static SeriesExpr odot(const Operad& op, SeriesExpr f, SeriesExpr g) {
    SeriesExpr e;
    e.kind = Kind::Odot;
    e.op = std::make_shared<Operad>(op);
    e.args = {std::move(f), std::move(g)};
    return e;
  }
};

// Unknowns X_i = rhs_i over one carrier. `floor` is the least size any object of the
// carrier can have (0 for paths, 1 for operads).
struct SeriesSystem {
  std::string name;
  GradedCollection carrier;
  std::vector<std::string> unknowns;
  std::vector<SeriesExpr> equations;
  std::size_t floor = 0;
};

inline CollectionSeries evaluate_expr(const SeriesExpr& e, const std::vector<CollectionSeries>& xs,
                                      const GradedCollection& carrier) {
  using K = SeriesExpr::Kind;
  auto all = [&]() {
    std::vector<CollectionSeries> out;
    for (const auto& a : e.args) out.push_back(evaluate_expr(a, xs, carrier));
    return out;
  };
  switch (e.kind) {
    case K::Constant: return *e.constant;
    case K::Unknown: return xs.at(e.unknown);
    case K::Sum: return sum_series(carrier, all());
    case K::Extension: return series_extension(*e.product, all());
    case K::Compose: return operad_compose_series(*e.op, e.x, all());
    case K::Odot: {
      auto fg = all();
      return odot(*e.op, fg[0], fg[1]);
    }
  }
  throw std::logic_error("unknown expression kind");
}

// Image of the equation under the size evaluation, as a map on truncated power series.
inline PowerSeries evaluate_expr_counts(const SeriesExpr& e, const std::vector<PowerSeries>& xs, std::size_t N) {
  using K = SeriesExpr::Kind;
  switch (e.kind) {
    case K::Constant: return ev_size(*e.constant, N);
    case K::Unknown: return xs.at(e.unknown);
    case K::Sum: {
      PowerSeries s(N);
      for (const auto& a : e.args) s = s + evaluate_expr_counts(a, xs, N);
      return s;
    }
    case K::Extension: {
      PowerSeries s = PowerSeries::constant(N, Scalar(1));
      for (const auto& a : e.args) s = s * evaluate_expr_counts(a, xs, N);
      for (long long k = 0; k < e.product->offset; ++k) s = s * PowerSeries::variable(N);
      if (e.product->offset < 0) throw std::invalid_argument("negative offsets have no power-series image");
      return s;
    }
    case K::Compose: {
      PowerSeries s = PowerSeries::constant(N, Scalar(1));
      for (const auto& a : e.args) s = s * evaluate_expr_counts(a, xs, N);
      return s;
    }
    case K::Odot:
      return ps_compose(evaluate_expr_counts(e.args[0], xs, N), evaluate_expr_counts(e.args[1], xs, N));
  }
  throw std::logic_error("unknown expression kind");
}

namespace detail {

inline constexpr std::size_t kNoTerms = static_cast<std::size_t>(-1) / 4;

// Lower bound on the least size with a nonzero coefficient.
inline std::size_t expr_valuation(const SeriesExpr& e, std::size_t floor, std::size_t N) {
  using K = SeriesExpr::Kind;
  switch (e.kind) {
    case K::Constant: return e.constant->valuation(N).value_or(kNoTerms);
    case K::Unknown: return floor;
    case K::Sum: {
      std::size_t v = kNoTerms;
      for (const auto& a : e.args) v = std::min(v, expr_valuation(a, floor, N));
      return v;
    }
    case K::Extension:
    case K::Compose: {
      std::size_t v = e.kind == K::Extension ? static_cast<std::size_t>(std::max(0LL, e.product->offset)) : 0;
      for (const auto& a : e.args) v = std::min(kNoTerms, v + expr_valuation(a, floor, N));
      return v;
    }
    case K::Odot: return std::min(kNoTerms, expr_valuation(e.args[0], floor, N) * expr_valuation(e.args[1], floor, N));
  }
  return 0;
}

// Every unknown must sit under factors that add at least one to the size; `credit`
// is the size contributed by the surrounding factors.
inline void check_guarded(const SeriesExpr& e, std::size_t credit, std::size_t floor, std::size_t N,
                          const SeriesSystem& sys, std::size_t eq) {
  using K = SeriesExpr::Kind;
  switch (e.kind) {
    case K::Constant: return;
    case K::Unknown:
      if (credit == 0)
        throw std::domain_error("equation for " + sys.unknowns[eq] + " is not productive: " + sys.unknowns.at(e.unknown) +
                                " occurs without a size-increasing factor");
      return;
    case K::Sum:
      for (const auto& a : e.args) check_guarded(a, credit, floor, N, sys, eq);
      return;
    case K::Extension:
    case K::Compose: {
      std::vector<std::size_t> vals;
      std::size_t total = e.kind == K::Extension ? static_cast<std::size_t>(std::max(0LL, e.product->offset)) : 0;
      for (const auto& a : e.args) {
        vals.push_back(expr_valuation(a, floor, N));
        total = std::min(kNoTerms, total + vals.back());
      }
      for (std::size_t k = 0; k < e.args.size(); ++k) {
        if (vals[k] >= kNoTerms) continue;
        check_guarded(e.args[k], credit + (total - vals[k]), floor, N, sys, eq);
      }
      return;
    }
    case K::Odot: {
      std::size_t vf = expr_valuation(e.args[0], floor, N), vg = expr_valuation(e.args[1], floor, N);
      if (vf >= kNoTerms || vg >= kNoTerms) return;
      check_guarded(e.args[0], credit + (vg > 0 ? vg - 1 : 0), floor, N, sys, eq);
      check_guarded(e.args[1], credit + (vf > 0 ? (vf - 1) * vg : 0), floor, N, sys, eq);
      return;
    }
  }
}

}  // namespace detail

inline void check_productive(const SeriesSystem& sys, std::size_t N) {
  if (sys.equations.size() != sys.unknowns.size())
    throw std::invalid_argument(sys.name + ": " + std::to_string(sys.unknowns.size()) + " unknowns but " +
                                std::to_string(sys.equations.size()) + " equations");
  for (std::size_t i = 0; i < sys.equations.size(); ++i) detail::check_guarded(sys.equations[i], 0, sys.floor, N, sys, i);
}

struct FixpointSolution {
  std::vector<CollectionSeries> series;  // one per unknown, bounded at N
  std::size_t iterations = 0;
};

// Iterates X <- rhs(X) from X = 0 until two consecutive iterates agree through size N.
inline FixpointSolution solve_fixpoint(const SeriesSystem& sys, std::size_t N) {
  check_productive(sys, N);
  std::vector<CollectionSeries> xs(sys.unknowns.size(), zero_series(sys.carrier));
  std::size_t cap = N + 3;
  for (std::size_t it = 1; it <= cap; ++it) {
    std::vector<CollectionSeries> next;
    for (const auto& eq : sys.equations) next.push_back(evaluate_expr(eq, xs, sys.carrier));
    bool stable = true;
    for (std::size_t i = 0; i < xs.size() && stable; ++i) stable = agree_through(xs[i], next[i], N);
    xs = std::move(next);
    if (stable) {
      FixpointSolution sol;
      for (std::size_t i = 0; i < xs.size(); ++i) sol.series.push_back(xs[i].truncated(N));
      sol.iterations = it;
      return sol;
    }
  }
  throw std::domain_error(sys.name + ": coefficients did not stabilize through size " + std::to_string(N) + " after " +
                          std::to_string(cap) + " iterations");
}

// The same iteration on the images under the size evaluation.
inline std::vector<PowerSeries> solve_fixpoint_counts(const SeriesSystem& sys, std::size_t N) {
  check_productive(sys, N);
  std::vector<PowerSeries> xs(sys.unknowns.size(), PowerSeries(N));
  for (std::size_t it = 1; it <= N + 3; ++it) {
    std::vector<PowerSeries> next;
    for (const auto& eq : sys.equations) next.push_back(evaluate_expr_counts(eq, xs, N));
    bool stable = next == xs;
    xs = std::move(next);
    if (stable) return xs;
  }
  throw std::domain_error(sys.name + ": coefficients did not stabilize through order " + std::to_string(N));
}

// A named equation together with the family it is expected to characterize.
struct FixpointPreset {
  SeriesSystem system;
  GradedCollection family;
};

inline std::vector<std::string> fixpoint_preset_names() {
  return {"dyck", "motzkin", "schroder", "fibonacci", "motz-operad", "nct"};
}

inline FixpointPreset fixpoint_preset(const std::string& name) {
  using E = SeriesExpr;
  if (name == "dyck" || name == "motzkin" || name == "schroder" || name == "fibonacci") {
    auto ps = paths();
    auto step = [&](const std::string& d) { return E::of(charac(std::vector<Obj>{path_from_digits(d)}, ps)); };
    auto star = [](std::vector<E> fs) {
      auto n = fs.size();
      return E::extension(path_star(n), std::move(fs));
    };
    E C = E::var(0), unit = step("0");
    std::vector<E> terms{unit};
    GradedCollection family = dyck_paths();
    if (name == "dyck") {
      terms.push_back(star({step("01"), C, step("10"), C}));
    } else if (name == "motzkin") {
      terms.push_back(star({step("00"), C}));
      terms.push_back(star({step("01"), C, step("10"), C}));
      family = motzkin_paths();
    } else if (name == "schroder") {
      terms.push_back(star({step("000"), C}));
      terms.push_back(star({step("01"), C, step("10"), C}));
      family = schroder_paths();
    } else {
      terms.push_back(star({step("00"), C}));
      terms.push_back(star({step("010"), C}));
      family = fibonacci_paths();
    }
    return {SeriesSystem{name, ps, {"C"}, {E::sum(std::move(terms))}, 0}, family};
  }
  if (name == "motz-operad") {
    Operad motz = motz_operad();
    auto ch = [&](const Obj& x) { return E::of(charac(std::vector<Obj>{x}, motz.carrier())); };
    Obj z = Obj::int_list("motz", {0});
    E C = E::var(0);
    E rhs = E::sum({ch(z), E::compose(motz, Obj::int_list("motz", {0, 0}), {ch(z), C}),
                    E::compose(motz, Obj::int_list("motz", {0, 1, 0}), {ch(z), C, C})});
    return {SeriesSystem{name, motz.carrier(), {"C"}, {rhs}, 1}, motz.carrier()};
  }
  if (name == "nct") {
    Operad nct = nct_operad();
    Obj l = Obj::parse("(nct 2 ((1 2) (1 3)))"), r = Obj::parse("(nct 2 ((1 3) (2 3)))");
    E unit = E::of(unit_series(nct)), C = E::var(0), f = E::var(1);
    E c_rhs = E::sum({unit, E::compose(nct, l, {C, C}), E::compose(nct, r, {f, C})});
    E f_rhs = E::sum({unit, E::compose(nct, r, {f, C})});
    return {SeriesSystem{name, nct.carrier(), {"C", "f"}, {c_rhs, f_rhs}, 1}, nct.carrier()};
  }
  std::string known;
  for (const auto& n : fixpoint_preset_names()) known += (known.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown preset '" + name + "' (known: " + known + ")");
}

}  // namespace operadica
