#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "operadica/collections/formulas.hpp"
#include "operadica/series/fixpoint.hpp"

using namespace operadica;

namespace {

// Height sequences of length n + 1 from 0 to 0 with steps in {-1, 0, 1}, kept when `ok`.
std::vector<Obj> brute_paths(std::size_t n, const std::function<bool(const std::vector<long long>&)>& ok) {
  std::vector<Obj> out;
  std::vector<long long> h{0};
  std::function<void()> rec = [&]() {
    if (h.size() == n + 1) {
      if (h.back() == 0 && ok(h)) out.push_back(Obj::int_list("path", h));
      return;
    }
    for (long long d = -1; d <= 1; ++d) {
      if (h.back() + d < 0) continue;
      h.push_back(h.back() + d);
      rec();
      h.pop_back();
    }
  };
  rec();
  std::sort(out.begin(), out.end());
  return out;
}

bool no_flats(const std::vector<long long>& h) {
  for (std::size_t i = 1; i < h.size(); ++i)
    if (h[i] == h[i - 1]) return false;
  return true;
}

bool even_flat_runs(const std::vector<long long>& h) {
  std::size_t run = 0;
  for (std::size_t i = 1; i <= h.size(); ++i) {
    if (i < h.size() && h[i] == h[i - 1]) {
      ++run;
      continue;
    }
    if (run % 2) return false;
    run = 0;
  }
  return true;
}

// Heights in {0, 1} with every 1 an isolated peak.
bool fibonacci_shape(const std::vector<long long>& h) {
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h[i] > 1 || (h[i] == 1 && i + 1 < h.size() && h[i + 1] == 1)) return false;
  return true;
}

std::vector<Obj> brute_family(const std::string& name, std::size_t n) {
  if (name == "dyck") return brute_paths(n, no_flats);
  if (name == "motzkin") return brute_paths(n, [](const auto&) { return true; });
  if (name == "schroder") return brute_paths(n, even_flat_runs);
  return brute_paths(n, fibonacci_shape);
}

BigInt motzkin_number(std::size_t n) {
  std::vector<BigInt> m{1};
  for (std::size_t k = 0; k < n; ++k) {
    BigInt s = m[k];
    for (std::size_t j = 0; j + 1 <= k; ++j) s += m[j] * m[k - 1 - j];
    m.push_back(s);
  }
  return m[n];
}

Obj random_path(std::mt19937_64& rng, std::size_t max_size) {
  std::size_t n = rng() % (max_size + 1);
  std::vector<long long> h{static_cast<long long>(rng() % 3)};
  for (std::size_t i = 0; i < n; ++i) h.push_back(std::max(0LL, h.back() + static_cast<long long>(rng() % 3) - 1));
  return Obj::int_list("path", h);
}

// A finite series with a handful of random terms and small nonzero coefficients.
CollectionSeries random_series(std::mt19937_64& rng, const GradedCollection& carrier,
                               const std::function<Obj(std::mt19937_64&)>& draw, std::size_t terms) {
  std::map<std::size_t, ObjPoly> by_size;
  for (std::size_t k = 0; k < terms; ++k) {
    Obj x = draw(rng);
    long long c = static_cast<long long>(rng() % 7) - 3;
    by_size[static_cast<std::size_t>(carrier.size_of(x))].add(x, Scalar(static_cast<long>(c == 0 ? 1 : c)));
  }
  return CollectionSeries("random", carrier, [by_size](std::size_t n) {
    auto it = by_size.find(n);
    return it == by_size.end() ? ObjPoly() : it->second;
  });
}

Obj random_motz(std::mt19937_64& rng, const Operad& motz, std::size_t max_arity) {
  std::size_t n = 1 + rng() % max_arity;
  const auto& xs = motz.carrier().enumerate_ref(n);
  return xs[rng() % xs.size()];
}

// <x, f (.) g> by scanning the whole carrier for factorizations y o [z1, ..., zn] = x.
Scalar brute_odot_coefficient(const Operad& op, const CollectionSeries& f, const CollectionSeries& g, const Obj& x) {
  std::size_t m = op.arity(x);
  Scalar total = 0;
  for (std::size_t n = 1; n <= m; ++n)
    for (const auto& y : op.carrier().enumerate_ref(n)) {
      Scalar fy = f.coefficient(y);
      if (fy == 0) continue;
      std::vector<Obj> zs;
      std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
        if (i == n) {
          if (left == 0 && full_composition(op, y, zs).coefficient(x) != 0) {
            Scalar c = fy;
            for (const auto& z : zs) c *= g.coefficient(z);
            total += c;
          }
          return;
        }
        for (std::size_t a = 1; a + (n - i - 1) <= left; ++a)
          for (const auto& z : op.carrier().enumerate_ref(a)) {
            zs.push_back(z);
            rec(i + 1, left - a);
            zs.pop_back();
          }
      };
      rec(0, m);
    }
  return total;
}

}  // namespace

TEST(Paths, WorkedProduct) {
  EXPECT_EQ(path_digits(path_product(path_from_digits("0101121"), path_from_digits("210011"))), "121223210011");
  Obj u = path_from_digits("0101121");
  EXPECT_EQ(path_product(u, unit_path()), u);
  EXPECT_EQ(path_product(unit_path(), u), u);
  EXPECT_EQ(path_product(path_from_digits("01"), path_from_digits("10")), path_from_digits("010"));
}

TEST(Paths, MonoidLawsOnRandomPaths) {
  std::mt19937_64 rng(11);
  auto ps = paths();
  for (int k = 0; k < 300; ++k) {
    Obj a = random_path(rng, 5), b = random_path(rng, 5), c = random_path(rng, 5);
    EXPECT_EQ(path_product(path_product(a, b), c), path_product(a, path_product(b, c)));
    EXPECT_EQ(ps.size_of(path_product(a, b)), ps.size_of(a) + ps.size_of(b));
    // Heights over the first point of a product never drop below the factors' minima.
    for (long long h : path_product(a, b).int_args()) EXPECT_GE(h, 0);
  }
  EXPECT_THROW(paths().enumerate(2), std::domain_error);
}

TEST(Paths, KleeneFamilies) {
  auto fib = fibonacci_paths();
  std::vector<std::size_t> f{1, 1, 2, 3, 5, 8};
  for (std::size_t n = 0; n < f.size(); ++n) EXPECT_EQ(fib.count(n), f[n]);
  auto sch = schroder_paths();
  std::vector<std::size_t> s{1, 2, 6, 22, 90};
  for (std::size_t k = 0; k < s.size(); ++k) {
    EXPECT_EQ(sch.count(2 * k), s[k]);
    EXPECT_EQ(sch.count(2 * k + 1), 0u);
  }
  for (const std::string name : {"dyck", "motzkin", "schroder", "fibonacci"}) {
    auto fam = fixpoint_preset(name).family;
    for (std::size_t n = 0; n <= 9; ++n) EXPECT_EQ(fam.enumerate(n), brute_family(name, n)) << name << " " << n;
  }
  for (std::size_t n = 0; n <= 10; ++n) {
    EXPECT_EQ(BigInt(static_cast<unsigned long>(dyck_paths().count(n))), n % 2 ? BigInt(0) : fuss_catalan(2, static_cast<long long>(n / 2)));
    EXPECT_EQ(BigInt(static_cast<unsigned long>(motzkin_paths().count(n))), motzkin_number(n));
  }
  EXPECT_THROW(kleene_family("bad", {path_from_digits("1")}), std::invalid_argument);
}

TEST(Series, CharacteristicAndEvaluation) {
  for (const auto& name : family_names()) {
    if (name == "paths") continue;
    auto c = family(name);
    std::size_t order = name == "permutations" || name == "kary_trees" ? 8 : 10;
    EXPECT_EQ(ev_size(charac(c), order), c.generating_series(order)) << name;
  }
  for (auto c : {dyck_paths(), motzkin_paths(), schroder_paths(), fibonacci_paths()})
    EXPECT_EQ(ev_size(charac(c, paths()), 10), c.generating_series(10)) << c.name();
  auto dyck = ev_size(charac(dyck_paths(), paths()), 12);
  for (std::size_t k = 0; k <= 6; ++k) EXPECT_EQ(dyck[2 * k], Scalar(fuss_catalan(2, static_cast<long long>(k))));

  EXPECT_EQ(charac(motzkin_words()).at(5).size(), 9u);
  EXPECT_TRUE(charac(std::vector<Obj>{}, paths()).at(3).empty());
  EXPECT_EQ(ev_size(zero_series(binary_trees_node()), 6), PowerSeries(6));

  auto ind = index_series(binary_trees_node());
  for (long long n = 0; n <= 9; ++n) EXPECT_EQ(ind.coefficient(Obj::integer(n)), Scalar(fuss_catalan(2, n)));
  auto by_index = ev_omega(ind, [](const Obj& o) { return o.as_int(); }, 9);
  EXPECT_EQ(by_index, binary_trees_node().generating_series(9));

  auto by_pred = charac([](const Obj& p) { return no_flats(p.int_args()); }, motzkin_paths(), "no flats");
  for (std::size_t n = 0; n <= 8; ++n) EXPECT_EQ(by_pred.at(n), charac(dyck_paths(), motzkin_paths()).at(n));

  auto f = charac(motzkin_paths(), paths());
  EXPECT_EQ(ev_omega(f, [&](const Obj& x) { return paths().size_of(x); }, 8), ev_size(f, 8));
  EXPECT_THROW(ev_omega(f, [](const Obj&) { return 0LL; }, 4), std::domain_error);
  // Fibers of the peak count are finite on paths of bounded height only; this one
  // (number of up steps) has all its fiber in sizes up to twice the value.
  auto ups = [](const Obj& x) {
    long long u = 0;
    auto h = x.int_args();
    for (std::size_t i = 1; i < h.size(); ++i) u += h[i] > h[i - 1];
    return u;
  };
  auto by_ups = ev_omega(charac(dyck_paths(), paths()), ups, 4, 8);
  for (std::size_t k = 0; k <= 4; ++k) EXPECT_EQ(by_ups[k], Scalar(fuss_catalan(2, static_cast<long long>(k))));
}

TEST(Series, TruncationAndQueries) {
  auto f = charac(motzkin_words()).truncated(5);
  EXPECT_EQ(f.coefficient(Obj::int_list("motz", {0, 1, 0})), Scalar(1));
  EXPECT_EQ(f.coefficient(Obj::int_list("motz", {0, 0, 0})), Scalar(1));
  EXPECT_THROW(f.at(6), std::out_of_range);
  EXPECT_EQ(f.valuation(5), std::optional<std::size_t>(1));
}

TEST(Series, ConcurrentMaterialization) {
  auto sol = solve_fixpoint(fixpoint_preset("motzkin").system, 9).series[0];
  auto fresh = solve_fixpoint(fixpoint_preset("motzkin").system, 9).series[0];
  std::vector<std::thread> ts;
  for (std::size_t n = 0; n <= 9; ++n) ts.emplace_back([&, n] { (void)fresh.at(9 - n); });
  for (auto& t : ts) t.join();
  for (std::size_t n = 0; n <= 9; ++n) EXPECT_EQ(fresh.at(n), sol.at(n));
}

TEST(Series, PathExtension) {
  auto ps = paths();
  auto up = charac(std::vector<Obj>{path_from_digits("01")}, ps), down = charac(std::vector<Obj>{path_from_digits("10")}, ps);
  auto peak = path_extension({up, down});
  EXPECT_EQ(peak.at(2), ObjPoly(path_from_digits("010")));
  EXPECT_TRUE(peak.at(1).empty());
  EXPECT_TRUE(peak.at(3).empty());

  auto one = charac(std::vector<Obj>{unit_path()}, ps);
  auto f = charac(motzkin_paths(), ps);
  for (std::size_t n = 0; n <= 6; ++n) {
    EXPECT_EQ(path_extension({one, f}).at(n), f.at(n));
    EXPECT_EQ(path_extension({f, one}).at(n), f.at(n));
  }

  GradedProduct bad{"bad", 2, [](const std::vector<Obj>& ys) { return path_product(path_product(ys[0], ys[1]), path_from_digits("00")); }};
  EXPECT_THROW(series_extension(bad, {f, f}).at(1), std::logic_error);
  EXPECT_THROW(series_extension(path_star(2), {f}), std::invalid_argument);
}

TEST(Series, StarEvaluationIsMultiplicative) {
  std::mt19937_64 rng(2024);
  auto ps = paths();
  auto draw = [](std::mt19937_64& r) { return random_path(r, 4); };
  for (int k = 0; k < 50; ++k) {
    auto f = random_series(rng, ps, draw, 6), g = random_series(rng, ps, draw, 6);
    EXPECT_EQ(ev_size(path_extension({f, g}), 8), ev_size(f, 8) * ev_size(g, 8)) << "pair " << k;
  }
}

TEST(Series, OdotUnitAndFactorization) {
  auto motz = motz_operad();
  auto one = unit_series(motz);
  std::mt19937_64 rng(5);
  auto draw = [&](std::mt19937_64& r) { return random_motz(r, motz, 4); };
  auto f = random_series(rng, motz.carrier(), draw, 8), g = random_series(rng, motz.carrier(), draw, 8);
  auto full = charac(motz.carrier());
  for (std::size_t n = 0; n <= 6; ++n) {
    EXPECT_EQ(odot(motz, f, one).at(n), f.at(n));
    EXPECT_EQ(odot(motz, one, f).at(n), f.at(n));
    EXPECT_EQ(odot(motz, full, one).at(n), full.at(n));
  }
  // Against a scan of every factorization in the carrier.
  auto fg = odot(motz, f, g);
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& x : motz.carrier().enumerate_ref(n))
      EXPECT_EQ(fg.coefficient(x), brute_odot_coefficient(motz, f, g, x)) << x.str();
}

TEST(Series, OdotAssociativeAndLeftLinear) {
  auto motz = motz_operad();
  std::mt19937_64 rng(77);
  auto draw = [&](std::mt19937_64& r) { return random_motz(r, motz, 3); };
  for (int k = 0; k < 3; ++k) {
    auto f = random_series(rng, motz.carrier(), draw, 5), g = random_series(rng, motz.carrier(), draw, 5),
         h = random_series(rng, motz.carrier(), draw, 5);
    auto lhs = odot(motz, odot(motz, f, g), h), rhs = odot(motz, f, odot(motz, g, h));
    for (std::size_t n = 0; n <= 6; ++n) EXPECT_EQ(lhs.at(n), rhs.at(n)) << k << " " << n;
    auto mixed = odot(motz, scaled(f, Scalar(2)) - scaled(h, Scalar(3)), g);
    auto split = scaled(odot(motz, f, g), Scalar(2)) - scaled(odot(motz, h, g), Scalar(3));
    for (std::size_t n = 0; n <= 6; ++n) EXPECT_EQ(mixed.at(n), split.at(n));
  }
  // On the right, (00) (.) (g + g) counts pairs, so doubling g quadruples the result.
  auto y = charac(std::vector<Obj>{Obj::int_list("motz", {0, 0})}, motz.carrier());
  auto g = unit_series(motz);
  EXPECT_NE(odot(motz, y, g + g).at(2), (odot(motz, y, g) + odot(motz, y, g)).at(2));
  EXPECT_EQ(odot(motz, y, g + g).at(2), odot(motz, y, g).at(2).scaled(Scalar(4)));
}

TEST(Series, OdotEvaluationIsComposition) {
  auto motz = motz_operad();
  std::mt19937_64 rng(99);
  auto draw = [&](std::mt19937_64& r) { return random_motz(r, motz, 4); };
  for (int k = 0; k < 50; ++k) {
    auto f = random_series(rng, motz.carrier(), draw, 4), g = random_series(rng, motz.carrier(), draw, 4);
    EXPECT_EQ(ev_size(odot(motz, f, g), 8), ps_compose(ev_size(f, 8), ev_size(g, 8))) << "pair " << k;
  }
  auto x = Obj::int_list("motz", {0, 1, 0});
  auto g1 = charac(motz.carrier()), g2 = random_series(rng, motz.carrier(), draw, 4);
  auto h = operad_compose_series(motz, x, {g1, g2, g1});
  EXPECT_EQ(ev_size(h, 8), ev_size(g1, 8) * ev_size(g2, 8) * ev_size(g1, 8));
}

TEST(Fixpoint, PresetsMatchBruteForceObjects) {
  for (const auto& name : fixpoint_preset_names()) {
    auto pre = fixpoint_preset(name);
    auto sol = solve_fixpoint(pre.system, 8);
    const auto& c = sol.series[0];
    for (std::size_t n = 0; n <= 8; ++n) {
      std::vector<Obj> expected =
          name == "motz-operad" || name == "nct" ? pre.family.enumerate(n) : brute_family(name, n);
      EXPECT_EQ(c.at(n), ObjPoly::characteristic(expected)) << name << " size " << n;
    }
    EXPECT_THROW(c.at(9), std::out_of_range);
  }
}

TEST(Fixpoint, PresetsMatchCountsToTwelve) {
  for (const auto& name : fixpoint_preset_names()) {
    auto pre = fixpoint_preset(name);
    auto counts = solve_fixpoint_counts(pre.system, 12)[0];
    auto objects = ev_size(solve_fixpoint(pre.system, 8).series[0], 8);
    for (std::size_t n = 0; n <= 8; ++n) EXPECT_EQ(counts[n], objects[n]) << name;
    for (std::size_t n = 0; n <= 12; ++n) {
      BigInt expected;
      if (name == "motz-operad") expected = n == 0 ? BigInt(0) : motzkin_number(n - 1);
      else if (name == "nct") expected = n == 0 ? BigInt(0) : binomial(3 * static_cast<long long>(n) - 2, static_cast<long long>(n) - 1) / static_cast<long>(n);
      else expected = BigInt(static_cast<unsigned long>(brute_family(name, n).size()));
      EXPECT_EQ(counts[n], Scalar(expected)) << name << " order " << n;
    }
  }
  std::vector<long long> motzkin{1, 1, 2, 4, 9, 21, 51}, schroder{1, 2, 6, 22, 90}, nct{1, 2, 7, 30, 143};
  auto m = ev_size(solve_fixpoint(fixpoint_preset("motzkin").system, 6).series[0], 6);
  for (std::size_t n = 0; n < motzkin.size(); ++n) EXPECT_EQ(m[n], Scalar(static_cast<long>(motzkin[n])));
  auto s = ev_size(solve_fixpoint(fixpoint_preset("schroder").system, 8).series[0], 8);
  for (std::size_t k = 0; k < schroder.size(); ++k) EXPECT_EQ(s[2 * k], Scalar(static_cast<long>(schroder[k])));
  auto t = ev_size(solve_fixpoint(fixpoint_preset("nct").system, 5).series[0], 5);
  for (std::size_t n = 1; n <= 5; ++n) EXPECT_EQ(t[n], Scalar(static_cast<long>(nct[n - 1])));
}

TEST(Fixpoint, NonProductiveEquationsRejected) {
  using E = SeriesExpr;
  auto ps = paths();
  auto zero = E::of(charac(std::vector<Obj>{unit_path()}, ps));
  SeriesSystem loop{"loop", ps, {"C"}, {E::sum({zero, E::var(0)})}, 0};
  EXPECT_THROW(solve_fixpoint(loop, 4), std::domain_error);
  // The unit path adds nothing to the size, so C = 0 + 0 * C does not progress.
  SeriesSystem flat{"flat", ps, {"C"}, {E::sum({zero, E::extension(path_star(2), {zero, E::var(0)})})}, 0};
  EXPECT_THROW(solve_fixpoint(flat, 4), std::domain_error);
  EXPECT_THROW(solve_fixpoint_counts(flat, 4), std::domain_error);
  auto motz = motz_operad();
  auto unit = E::of(unit_series(motz));
  SeriesSystem unary{"unary", motz.carrier(), {"C"}, {E::sum({unit, E::compose(motz, Obj::int_list("motz", {0}), {E::var(0)})})}, 1};
  EXPECT_THROW(solve_fixpoint(unary, 4), std::domain_error);
  SeriesSystem mismatch{"mismatch", ps, {"C", "D"}, {zero}, 0};
  EXPECT_THROW(solve_fixpoint(mismatch, 4), std::invalid_argument);
  EXPECT_THROW(fixpoint_preset("catalan"), std::invalid_argument);
}
