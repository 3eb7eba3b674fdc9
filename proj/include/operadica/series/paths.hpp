#pragma once

#include <cstddef>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "operadica/collections/families.hpp"
#include "operadica/series/series.hpp"

namespace operadica {

// Paths are (path h1 ... hn) with natural heights; size n - 1.
inline Obj path_word(const std::vector<long long>& heights) {
  if (heights.empty()) throw std::invalid_argument("paths are nonempty");
  for (long long h : heights)
    if (h < 0) throw std::invalid_argument("path heights are natural numbers");
  return Obj::int_list("path", heights);
}

// "0101121" -> (path 0 1 0 1 1 2 1); one digit per height.
inline Obj path_from_digits(const std::string& s) {
  std::vector<long long> hs;
  for (char ch : s) {
    if (ch < '0' || ch > '9') throw std::invalid_argument("path digits expected, got '" + s + "'");
    hs.push_back(ch - '0');
  }
  return path_word(hs);
}

inline std::string path_digits(const Obj& p) {
  std::string out;
  for (long long h : p.int_args()) {
    if (h > 9) return p.str();
    out += static_cast<char>('0' + h);
  }
  return out;
}

inline Obj unit_path() { return path_word({0}); }

// Superimposing concatenation: with k = |u(n) - v(1)|, the lower of the two pieces
// is raised by k and the shared point is kept once.
inline Obj path_product(const Obj& u, const Obj& v) {
  auto a = u.int_args(), b = v.int_args();
  if (a.empty() || b.empty()) throw std::invalid_argument("paths are nonempty");
  long long k = std::llabs(a.back() - b.front());
  std::vector<long long> w;
  if (b.front() >= a.back()) {
    for (std::size_t i = 0; i + 1 < a.size(); ++i) w.push_back(a[i] + k);
    w.insert(w.end(), b.begin(), b.end());
  } else {
    w = a;
    for (std::size_t i = 1; i < b.size(); ++i) w.push_back(b[i] + k);
  }
  return path_word(w);
}

inline GradedProduct path_star(std::size_t arity = 2) {
  return {"star", arity, [](const std::vector<Obj>& ps) {
            Obj r = ps.at(0);
            for (std::size_t i = 1; i < ps.size(); ++i) r = path_product(r, ps[i]);
            return r;
          }};
}

inline CollectionSeries path_extension(const std::vector<CollectionSeries>& fs) {
  return series_extension(path_star(fs.size()), fs);
}

using PathConstraint = std::function<bool(const std::vector<long long>&)>;

inline bool starts_and_ends_at_zero(const std::vector<long long>& h) { return h.front() == 0 && h.back() == 0; }

namespace detail {

// Generated paths by size, before any constraint.
class KleeneGenerator {
 public:
  explicit KleeneGenerator(std::vector<Obj> steps) : steps_(std::move(steps)) {}

  std::vector<Obj> filtered(std::size_t n, const PathConstraint& constraint) {
    std::lock_guard<std::mutex> lock(mu_);
    std::vector<Obj> out;
    for (const auto& p : generated(n))
      if (!constraint || constraint(p.int_args())) out.push_back(p);
    return out;
  }

 private:
  const std::set<Obj>& generated(std::size_t n) {
    auto it = memo_.find(n);
    if (it != memo_.end()) return it->second;
    std::set<Obj> out;
    if (n == 0) out.insert(unit_path());
    for (const auto& s : steps_) {
      auto m = static_cast<std::size_t>(s.length() - 2);
      if (m > n) continue;
      for (const auto& rest : generated(n - m)) out.insert(path_product(s, rest));
    }
    return memo_.emplace(n, std::move(out)).first->second;
  }

  std::vector<Obj> steps_;
  std::mutex mu_;
  std::map<std::size_t, std::set<Obj>> memo_;
};

}  // namespace detail

// The submonoid generated by `steps`, filtered by `constraint`. Steps must have
// positive size, except the unit path which is ignored.
inline GradedCollection kleene_family(std::string name, const std::vector<Obj>& steps, PathConstraint constraint = {}) {
  auto ps = paths();
  std::vector<Obj> kept;
  for (const auto& s : steps) {
    long long n = ps.size_of(s);
    if (s == unit_path()) continue;
    if (n == 0) throw std::invalid_argument("step " + s.str() + " has size 0 and generates infinitely many paths of size 0");
    kept.push_back(s);
  }
  auto gen = std::make_shared<detail::KleeneGenerator>(std::move(kept));
  return GradedCollection(
      std::move(name), [gen, constraint](std::size_t n) { return gen->filtered(n, constraint); },
      [ps](const Obj& o) { return ps.size_of(o); });
}

inline GradedCollection dyck_paths() {
  return kleene_family("dyck_paths", {path_from_digits("01"), path_from_digits("10")}, starts_and_ends_at_zero);
}

inline GradedCollection motzkin_paths() {
  return kleene_family("motzkin_paths", {path_from_digits("01"), path_from_digits("00"), path_from_digits("10")},
                       starts_and_ends_at_zero);
}

inline GradedCollection schroder_paths() {
  return kleene_family("schroder_paths", {path_from_digits("01"), path_from_digits("000"), path_from_digits("10")},
                       starts_and_ends_at_zero);
}

inline GradedCollection fibonacci_paths() {
  return kleene_family("fibonacci_paths", {path_from_digits("00"), path_from_digits("010")});
}

}  // namespace operadica
