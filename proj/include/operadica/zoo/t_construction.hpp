#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "operadica/operads/operad.hpp"

namespace operadica {

// A monoid on Obj values. When the monoid is infinite, `window` is the finite set of
// letters used to enumerate words.
struct MonoidSpec {
  std::string name;
  std::function<Obj(const Obj&, const Obj&)> product;
  Obj unit;
  std::function<bool(const Obj&)> member;
  std::vector<Obj> window;
  bool finite = true;
};

// Unit and associativity laws over all window elements.
inline void verify_monoid(const MonoidSpec& m) {
  if (!m.member(m.unit)) throw std::logic_error(m.name + ": unit " + m.unit.str() + " is not an element");
  for (const auto& x : m.window) {
    if (m.product(m.unit, x) != x || m.product(x, m.unit) != x)
      throw std::logic_error(m.name + ": unit law fails at " + x.str());
    for (const auto& y : m.window)
      for (const auto& z : m.window)
        if (m.product(m.product(x, y), z) != m.product(x, m.product(y, z)))
          throw std::logic_error(m.name + ": associativity fails at " + x.str() + ", " + y.str() + ", " + z.str());
  }
}

inline MonoidSpec trivial_monoid() {
  MonoidSpec m{"trivial", [](const Obj&, const Obj&) { return Obj::integer(1); }, Obj::integer(1),
               [](const Obj& x) { return x.is_int() && x.as_int() == 1; }, {Obj::integer(1)}, true};
  verify_monoid(m);
  return m;
}

inline std::vector<Obj> integer_window(long long top) {
  std::vector<Obj> w;
  for (long long k = 0; k <= top; ++k) w.push_back(Obj::integer(k));
  return w;
}

inline MonoidSpec max_monoid(long long window_top = 2) {
  MonoidSpec m{"max", [](const Obj& a, const Obj& b) { return Obj::integer(std::max(a.as_int(), b.as_int())); },
               Obj::integer(0), [](const Obj& x) { return x.is_int() && x.as_int() >= 0; }, integer_window(window_top),
               false};
  verify_monoid(m);
  return m;
}

inline MonoidSpec plus_monoid(long long window_top = 2) {
  MonoidSpec m{"plus", [](const Obj& a, const Obj& b) { return Obj::integer(a.as_int() + b.as_int()); },
               Obj::integer(0), [](const Obj& x) { return x.is_int() && x.as_int() >= 0; }, integer_window(window_top),
               false};
  verify_monoid(m);
  return m;
}

// Words (w x1 ... xk) over an alphabet, with concatenation; the window holds the
// words of length at most window_length.
inline MonoidSpec free_monoid(std::vector<std::string> alphabet = {"a", "b"}, std::size_t window_length = 1) {
  if (alphabet.empty()) throw std::invalid_argument("free monoid needs a nonempty alphabet");
  std::vector<Obj> window{Obj::tagged("w")};
  for (std::size_t len = 1, lo = 0; len <= window_length; ++len) {
    std::size_t hi = window.size();
    for (std::size_t k = lo; k < hi; ++k)
      for (const auto& a : alphabet) {
        Obj::List w = window[k].items();
        w.push_back(Obj::symbol(a));
        window.push_back(Obj::list(std::move(w)));
      }
    lo = hi;
  }
  auto member = [alphabet](const Obj& x) {
    if (!x.has_tag("w")) return false;
    for (std::size_t i = 1; i < x.length(); ++i)
      if (!x[i].is_symbol() || std::find(alphabet.begin(), alphabet.end(), x[i].as_symbol()) == alphabet.end()) return false;
    return true;
  };
  auto product = [](const Obj& a, const Obj& b) {
    Obj::List w = a.items();
    w.insert(w.end(), b.items().begin() + 1, b.items().end());
    return Obj::list(std::move(w));
  };
  std::string name = "free(";
  for (std::size_t i = 0; i < alphabet.size(); ++i) name += (i ? "," : "") + alphabet[i];
  MonoidSpec m{name + ")", product, Obj::tagged("w"), member, window, false};
  verify_monoid(m);
  return m;
}

// Words (t x1 ... xn) on M, graded by length; u o_i v replaces u(i) by
// (u(i) * v(1)) ... (u(i) * v(m)).
inline Operad t_construction(const MonoidSpec& m) {
  auto window = m.window;
  GradedCollection carrier(
      "T(" + m.name + ")",
      [window](std::size_t n) {
        std::vector<Obj> out;
        if (n == 0) return out;
        std::vector<const std::vector<Obj>*> slots(n, &window);
        detail::for_each_tuple(slots, [&](const std::vector<Obj>& xs) {
          Obj::List w{Obj::symbol("t")};
          w.insert(w.end(), xs.begin(), xs.end());
          out.push_back(Obj::list(std::move(w)));
        });
        return out;
      },
      [m](const Obj& o) -> long long {
        if (!o.has_tag("t") || o.length() < 2) throw std::invalid_argument("expected a nonempty word (t x1 ... xn), got " + o.str());
        for (std::size_t i = 1; i < o.length(); ++i)
          if (!m.member(o[i])) throw std::invalid_argument("letter " + o[i].str() + " is not in the monoid " + m.name);
        return static_cast<long long>(o.length()) - 1;
      });
  auto product = m.product;
  auto compose = [product](const Obj& x, std::size_t i, const Obj& y) {
    std::size_t n = x.length() - 1;
    if (i < 1 || i > n) throw std::out_of_range("partial composition index " + std::to_string(i) + " outside [1, " + std::to_string(n) + "]");
    Obj::List w(x.items().begin(), x.items().begin() + static_cast<long>(i));
    for (std::size_t k = 1; k < y.length(); ++k) w.push_back(product(x[i], y[k]));
    w.insert(w.end(), x.items().begin() + static_cast<long>(i) + 1, x.items().end());
    return ObjPoly(Obj::list(std::move(w)));
  };
  Operad op("T(" + m.name + ")", carrier, compose, Obj::tagged("t", m.unit));
  if (!m.finite) {
    std::string letters;
    for (const auto& x : m.window) letters += (letters.empty() ? "" : " ") + x.str();
    op.set_not_combinatorial(m.name + " is infinite; enumeration only uses the letters " + letters);
  }
  return op;
}

}  // namespace operadica
