#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "operadica/collections/families.hpp"
#include "operadica/collections/graded_collection.hpp"
#include "operadica/collections/poly.hpp"
#include "operadica/kernel/power_series.hpp"
#include "operadica/operads/operad.hpp"

namespace operadica {

// A series on a graded collection, materialized one size class at a time. Copies
// share the memo table; a bound, when set, refuses sizes beyond it.
class CollectionSeries {
 public:
  using Materializer = std::function<ObjPoly(std::size_t)>;

  CollectionSeries(std::string name, GradedCollection carrier, Materializer m,
                   std::optional<std::size_t> bound = std::nullopt)
      : impl_(std::make_shared<Impl>(std::move(name), std::move(carrier), std::move(m), bound)) {}

  const std::string& name() const { return impl_->name; }
  const GradedCollection& carrier() const { return impl_->carrier; }
  std::optional<std::size_t> bound() const { return impl_->bound; }

  // The terms of size n.
  const ObjPoly& at(std::size_t n) const {
    if (impl_->bound && n > *impl_->bound)
      throw std::out_of_range(name() + " is truncated at size " + std::to_string(*impl_->bound) + "; size " +
                              std::to_string(n) + " requested");
    {
      std::lock_guard<std::mutex> lock(impl_->mu);
      auto it = impl_->memo.find(n);
      if (it != impl_->memo.end()) return it->second;
    }
    ObjPoly p = impl_->materialize(n);
    for (const auto& [x, c] : p)
      if (impl_->carrier.size_of(x) != static_cast<long long>(n))
        throw std::logic_error(name() + ": term " + x.str() + " materialized at size " + std::to_string(n) +
                               " has size " + std::to_string(impl_->carrier.size_of(x)));
    std::lock_guard<std::mutex> lock(impl_->mu);
    return impl_->memo.try_emplace(n, std::move(p)).first->second;
  }

  ObjPoly materialize(std::size_t n) const { return at(n); }

  Scalar coefficient(const Obj& x) const {
    long long n = impl_->carrier.size_of(x);
    if (n < 0) throw std::invalid_argument("negative size for " + x.str());
    return at(static_cast<std::size_t>(n)).coefficient(x);
  }

  // Same coefficients, with a bound of N.
  CollectionSeries truncated(std::size_t N) const {
    auto self = *this;
    return CollectionSeries(name(), carrier(), [self](std::size_t n) { return self.at(n); },
                            bound() ? std::min(*bound(), N) : N);
  }

  // Smallest size with a nonzero term, scanning up to `limit`.
  std::optional<std::size_t> valuation(std::size_t limit) const {
    for (std::size_t n = 0; n <= limit; ++n) {
      if (bound() && n > *bound()) break;
      if (!at(n).empty()) return n;
    }
    return std::nullopt;
  }

 private:
  struct Impl {
    Impl(std::string n, GradedCollection c, Materializer m, std::optional<std::size_t> b)
        : name(std::move(n)), carrier(std::move(c)), materialize(std::move(m)), bound(b) {}
    std::string name;
    GradedCollection carrier;
    Materializer materialize;
    std::optional<std::size_t> bound;
    std::mutex mu;
    std::map<std::size_t, ObjPoly> memo;
  };
  std::shared_ptr<Impl> impl_;
};

inline std::optional<std::size_t> min_bound(std::optional<std::size_t> a, std::optional<std::size_t> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

inline CollectionSeries zero_series(const GradedCollection& c) {
  return CollectionSeries("0", c, [](std::size_t) { return ObjPoly(); });
}

inline CollectionSeries charac(const GradedCollection& x, const GradedCollection& c) {
  return CollectionSeries("Char(" + x.name() + ")", c,
                          [x](std::size_t n) { return ObjPoly::characteristic(x.enumerate_ref(n)); });
}

inline CollectionSeries charac(const GradedCollection& c) { return charac(c, c); }

inline CollectionSeries charac(const std::function<bool(const Obj&)>& pred, const GradedCollection& c,
                               const std::string& name = "Char(X)") {
  return CollectionSeries(name, c, [pred, c](std::size_t n) {
    ObjPoly p;
    for (const auto& x : c.enumerate_ref(n))
      if (pred(x)) p.add(x, Scalar(1));
    return p;
  });
}

// Characteristic series of a finite set of objects.
inline CollectionSeries charac(const std::vector<Obj>& xs, const GradedCollection& c) {
  std::map<std::size_t, ObjPoly> by_size;
  std::string name = "Char{";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    long long n = c.size_of(xs[i]);
    if (n < 0) throw std::invalid_argument("negative size for " + xs[i].str());
    ObjPoly& p = by_size[static_cast<std::size_t>(n)];
    if (p.coefficient(xs[i]) != 0) throw std::invalid_argument("repeated object " + xs[i].str() + " in a characteristic series");
    p.add(xs[i], Scalar(1));
    name += (i ? ", " : "") + xs[i].str();
  }
  return CollectionSeries(name + "}", c, [by_size](std::size_t n) {
    auto it = by_size.find(n);
    return it == by_size.end() ? ObjPoly() : it->second;
  });
}

// Sum over i of #C(i) times the index i, as a series on the naturals.
inline CollectionSeries index_series(const GradedCollection& c) {
  return CollectionSeries("Ind(" + c.name() + ")", naturals(), [c](std::size_t n) {
    ObjPoly p;
    p.add(Obj::integer(static_cast<long long>(n)), Scalar(static_cast<unsigned long>(c.count(n))));
    return p;
  });
}

inline CollectionSeries scaled(const CollectionSeries& f, const Scalar& a) {
  return CollectionSeries(a.get_str() + " " + f.name(), f.carrier(), [f, a](std::size_t n) { return f.at(n).scaled(a); },
                          f.bound());
}

inline CollectionSeries operator+(const CollectionSeries& f, const CollectionSeries& g) {
  return CollectionSeries(f.name() + " + " + g.name(), f.carrier(), [f, g](std::size_t n) { return f.at(n) + g.at(n); },
                          min_bound(f.bound(), g.bound()));
}

inline CollectionSeries operator-(const CollectionSeries& f, const CollectionSeries& g) {
  return CollectionSeries(f.name() + " - " + g.name(), f.carrier(), [f, g](std::size_t n) { return f.at(n) - g.at(n); },
                          min_bound(f.bound(), g.bound()));
}

inline CollectionSeries sum_series(const GradedCollection& c, const std::vector<CollectionSeries>& fs) {
  if (fs.empty()) return zero_series(c);
  CollectionSeries s = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) s = s + fs[i];
  return s;
}

// True when f and g agree on every size up to N.
inline bool agree_through(const CollectionSeries& f, const CollectionSeries& g, std::size_t N) {
  for (std::size_t n = 0; n <= N; ++n)
    if (f.at(n) != g.at(n)) return false;
  return true;
}

// ev of the series for the size grading: sum of the coefficients of size n at t^n.
inline PowerSeries ev_size(const CollectionSeries& f, std::size_t N) {
  PowerSeries s(N);
  for (std::size_t n = 0; n <= N; ++n)
    for (const auto& [x, c] : f.at(n)) s[n] += c;
  return s;
}

// Sum of <x, f> t^omega(x) truncated at N. Terms are read up to size `size_bound`;
// the next size class is probed, and a term there with omega(x) <= N means the
// fiber is not contained in the sizes read, which is reported as an error.
inline PowerSeries ev_omega(const CollectionSeries& f, const std::function<long long(const Obj&)>& omega, std::size_t N,
                            std::optional<std::size_t> size_bound = std::nullopt) {
  std::size_t top = size_bound.value_or(N);
  PowerSeries s(N);
  for (std::size_t n = 0; n <= top; ++n)
    for (const auto& [x, c] : f.at(n)) {
      long long w = omega(x);
      if (w < 0) throw std::invalid_argument("omega takes a negative value on " + x.str());
      if (static_cast<std::size_t>(w) <= N) s[static_cast<std::size_t>(w)] += c;
    }
  if (!f.bound() || top + 1 <= *f.bound())
    for (const auto& [x, c] : f.at(top + 1)) {
      long long w = omega(x);
      if (w >= 0 && static_cast<std::size_t>(w) <= N)
        throw std::domain_error("omega-evaluation of " + f.name() + ": the fiber of " + std::to_string(w) +
                                " reaches past size " + std::to_string(top) + " (at " + x.str() + ")");
    }
  return s;
}

namespace detail {

// Calls f on every sequence of k integers >= lo summing to n.
inline void for_each_bounded_composition(std::size_t n, std::size_t k, std::size_t lo,
                                         const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> parts;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t left, std::size_t slots) {
    if (slots == 0) {
      if (left == 0) f(parts);
      return;
    }
    for (std::size_t p = lo; p + (slots - 1) * lo <= left; ++p) {
      parts.push_back(p);
      rec(left - p, slots - 1);
      parts.pop_back();
    }
  };
  rec(n, k);
}

// Every choice of one term per factor, with the product of their coefficients.
inline void for_each_term_tuple(const std::vector<const ObjPoly*>& polys,
                                const std::function<void(const std::vector<Obj>&, const Scalar&)>& f) {
  std::vector<Obj> cur;
  std::function<void(std::size_t, const Scalar&)> rec = [&](std::size_t i, const Scalar& c) {
    if (i == polys.size()) {
      f(cur, c);
      return;
    }
    for (const auto& [x, a] : *polys[i]) {
      cur.push_back(x);
      rec(i + 1, c * a);
      cur.pop_back();
    }
  };
  rec(0, Scalar(1));
}

}  // namespace detail

// A p-ary product on a graded collection whose output size is the sum of the input
// sizes plus `offset`.
struct GradedProduct {
  std::string name;
  std::size_t arity;
  std::function<Obj(const std::vector<Obj>&)> apply;
  long long offset = 0;
};

// <x, *(f1, ..., fp)> = sum over y1 ... yp with *(y) = x of the products <yk, fk>.
// Preimages are read off the size compositions of n - offset.
inline CollectionSeries series_extension(const GradedProduct& prod, const std::vector<CollectionSeries>& fs) {
  if (fs.size() != prod.arity)
    throw std::invalid_argument(prod.name + " takes " + std::to_string(prod.arity) + " series, got " +
                                std::to_string(fs.size()));
  if (fs.empty()) throw std::invalid_argument("series extension of a nullary product");
  std::string name = prod.name + "(";
  std::optional<std::size_t> bound;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    name += (i ? ", " : "") + fs[i].name();
    bound = min_bound(bound, fs[i].bound());
  }
  const GradedCollection carrier = fs[0].carrier();
  return CollectionSeries(name + ")", carrier, [prod, fs, carrier](std::size_t n) {
    ObjPoly out;
    long long rest = static_cast<long long>(n) - prod.offset;
    if (rest < 0) return out;
    detail::for_each_bounded_composition(static_cast<std::size_t>(rest), fs.size(), 0, [&](const std::vector<std::size_t>& sizes) {
      std::vector<const ObjPoly*> polys;
      for (std::size_t k = 0; k < fs.size(); ++k) {
        const ObjPoly& p = fs[k].at(sizes[k]);
        if (p.empty()) return;
        polys.push_back(&p);
      }
      detail::for_each_term_tuple(polys, [&](const std::vector<Obj>& ys, const Scalar& c) {
        Obj x = prod.apply(ys);
        if (carrier.size_of(x) != static_cast<long long>(n))
          throw std::logic_error(prod.name + " is not graded: it sends factors of total size " + std::to_string(rest) +
                                 " to " + x.str());
        out.add(x, c);
      });
    });
    return out;
  }, bound);
}

// x o [g1, ..., gn] extended to series, with x drawn from f's arity-n terms.
// Arity-0 terms are not allowed in the gi.
inline CollectionSeries operad_compose_series(const Operad& op, const CollectionSeries& f,
                                              const std::vector<CollectionSeries>& gs) {
  if (!op.is_set_operad()) throw std::invalid_argument("series products need a set-operad; " + op.name() + " is linear");
  std::size_t k = gs.size();
  std::string name = f.name() + " o [";
  std::optional<std::size_t> bound = f.bound();
  for (std::size_t i = 0; i < k; ++i) {
    name += (i ? ", " : "") + gs[i].name();
    bound = min_bound(bound, gs[i].bound());
  }
  return CollectionSeries(name + "]", op.carrier(), [op, f, gs, k](std::size_t n) {
    ObjPoly out;
    if (k == 0) return out;
    for (const auto& g : gs)
      if (!g.at(0).empty()) throw std::domain_error(g.name() + " has arity-0 terms; composition preimages are infinite");
    const ObjPoly& ys = f.at(k);
    if (ys.empty()) return out;
    detail::for_each_bounded_composition(n, k, 1, [&](const std::vector<std::size_t>& sizes) {
      std::vector<const ObjPoly*> polys;
      for (std::size_t i = 0; i < k; ++i) {
        const ObjPoly& p = gs[i].at(sizes[i]);
        if (p.empty()) return;
        polys.push_back(&p);
      }
      detail::for_each_term_tuple(polys, [&](const std::vector<Obj>& zs, const Scalar& c) {
        for (const auto& [y, a] : ys) out.add(full_composition(op, y, zs), a * c);
      });
    });
    return out;
  }, bound);
}

inline CollectionSeries operad_compose_series(const Operad& op, const Obj& x, const std::vector<CollectionSeries>& gs) {
  return operad_compose_series(op, charac(std::vector<Obj>{x}, op.carrier()), gs);
}

// <x, f (.) g> = sum over y o [z1, ..., zn] = x of <y, f> times the <zi, g>.
inline CollectionSeries odot(const Operad& op, const CollectionSeries& f, const CollectionSeries& g) {
  if (!op.is_set_operad()) throw std::invalid_argument("series products need a set-operad; " + op.name() + " is linear");
  return CollectionSeries("(" + f.name() + ") . (" + g.name() + ")", op.carrier(), [op, f, g](std::size_t m) {
    ObjPoly out;
    if (!g.at(0).empty()) throw std::domain_error(g.name() + " has arity-0 terms; composition preimages are infinite");
    for (std::size_t n = 1; n <= m; ++n) {
      const ObjPoly& ys = f.at(n);
      if (ys.empty()) continue;
      detail::for_each_bounded_composition(m, n, 1, [&](const std::vector<std::size_t>& sizes) {
        std::vector<const ObjPoly*> polys;
        for (std::size_t i = 0; i < n; ++i) {
          const ObjPoly& p = g.at(sizes[i]);
          if (p.empty()) return;
          polys.push_back(&p);
        }
        detail::for_each_term_tuple(polys, [&](const std::vector<Obj>& zs, const Scalar& c) {
          for (const auto& [y, a] : ys) out.add(full_composition(op, y, zs), a * c);
        });
      });
    }
    return out;
  }, min_bound(f.bound(), g.bound()));
}

// The unit series Char{1} of a set-operad.
inline CollectionSeries unit_series(const Operad& op) { return charac(std::vector<Obj>{op.unit()}, op.carrier()); }

}  // namespace operadica
