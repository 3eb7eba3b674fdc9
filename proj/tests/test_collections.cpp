#include <gtest/gtest.h>

#include <set>

#include "operadica/collections/families.hpp"
#include "operadica/collections/formulas.hpp"
#include "operadica/collections/operations.hpp"
#include "operadica/collections/poly.hpp"

using namespace operadica;

namespace {

std::vector<std::size_t> counts(const GradedCollection& c, std::size_t from, std::size_t to) {
  std::vector<std::size_t> out;
  for (std::size_t n = from; n <= to; ++n) out.push_back(c.count(n));
  return out;
}

PowerSeries monomial_power_factor(std::size_t order, std::size_t n, bool inverse, std::size_t times) {
  PowerSeries f = PowerSeries::constant(order, Scalar(1));
  PowerSeries base = PowerSeries::constant(order, Scalar(1));
  if (n <= order) base[n] = inverse ? -1 : 1;
  if (inverse) base = reciprocal(base);
  for (std::size_t i = 0; i < times; ++i) f = f * base;
  return f;
}

}  // namespace

TEST(Obj, RoundTripAndOrder) {
  for (std::string s : {"(comp 2 1 2)", "(node (leaf) (node (leaf) (leaf)))", "x", "-4", "()",
                        "(col 1 (a 3) (1 2 1))"}) {
    EXPECT_EQ(Obj::parse(s).str(), s);
  }
  EXPECT_EQ(Obj::parse("(node(leaf)(leaf))").str(), "(node (leaf) (leaf))");
  EXPECT_LT(Obj::integer(5), Obj::symbol("a"));
  EXPECT_LT(Obj::symbol("a"), Obj::parse("(a)"));
  EXPECT_LT(Obj::parse("(a 1)"), Obj::parse("(a 1 0)"));
  EXPECT_LT(Obj::parse("(a 1 5)"), Obj::parse("(a 2)"));
  EXPECT_THROW(Obj::parse("(a b"), std::invalid_argument);
  EXPECT_THROW(Obj::parse("a)"), std::invalid_argument);
}

TEST(Poly, NeverStoresZeros) {
  Poly<Obj> p;
  Obj a = Obj::symbol("a"), b = Obj::symbol("b");
  p.add(a, 2);
  p.add(b, 1);
  p.add(a, -2);
  EXPECT_EQ(p.size(), 1u);
  Poly<Obj> q = p - p;
  EXPECT_TRUE(q.empty());
  EXPECT_TRUE(p.scaled(0).empty());
  EXPECT_EQ((p + p).coefficient(b), 2);
}

TEST(Families, CompositionsOfThree) {
  auto objs = compositions().enumerate(3);
  std::set<std::string> got;
  for (const auto& o : objs) got.insert(o.str());
  EXPECT_EQ(got, (std::set<std::string>{"(comp 3)", "(comp 2 1)", "(comp 1 2)", "(comp 1 1 1)"}));
}

TEST(Families, SmallCases) {
  auto bt = binary_trees_node();
  ASSERT_EQ(bt.enumerate(0).size(), 1u);
  EXPECT_EQ(bt.enumerate(0)[0].str(), "(leaf)");
  EXPECT_EQ(partitions().count(5), 7u);
  EXPECT_EQ(counts(permutations(), 0, 5), (std::vector<std::size_t>{1, 1, 2, 6, 24, 120}));
  EXPECT_EQ(counts(bt, 0, 6), (std::vector<std::size_t>{1, 1, 2, 5, 14, 42, 132}));
  EXPECT_EQ(counts(schroder_trees(), 1, 6), (std::vector<std::size_t>{1, 1, 3, 11, 45, 197}));
  EXPECT_EQ(counts(kary_trees(3), 0, 4), (std::vector<std::size_t>{1, 1, 3, 12, 55}));
  EXPECT_EQ(counts(motzkin_words(), 1, 7), (std::vector<std::size_t>{1, 1, 2, 4, 9, 21, 51}));
}

TEST(Families, CountsAgainstIndependentRecurrences) {
  // Compositions: 2^(n-1).
  for (std::size_t n = 1; n <= 10; ++n) EXPECT_EQ(compositions().count(n), std::size_t(1) << (n - 1));
  // Partitions by the coin-change recurrence.
  std::vector<std::size_t> p(13, 0);
  p[0] = 1;
  for (std::size_t part = 1; part <= 12; ++part)
    for (std::size_t n = part; n <= 12; ++n) p[n] += p[n - part];
  for (std::size_t n = 0; n <= 12; ++n) EXPECT_EQ(partitions().count(n), p[n]);
  // Motzkin: M(n) = M(n-1) + sum_k M(k) M(n-2-k) over path lengths n = size - 1.
  std::vector<std::size_t> m(10, 0);
  m[0] = 1;
  for (std::size_t n = 1; n < 10; ++n) {
    m[n] = m[n - 1];
    for (std::size_t k = 0; k + 2 <= n; ++k) m[n] += m[k] * m[n - 2 - k];
  }
  for (std::size_t n = 1; n <= 9; ++n) EXPECT_EQ(motzkin_words().count(n), m[n - 1]);
  // Closed formulas agree with enumeration.
  for (long long k = 2; k <= 4; ++k)
    for (long long n = 0; n <= 5; ++n)
      EXPECT_EQ(BigInt(static_cast<unsigned long>(kary_trees(k).count(n))), fuss_catalan(k, n));
  for (long long n = 1; n <= 7; ++n)
    EXPECT_EQ(BigInt(static_cast<unsigned long>(schroder_trees().count(n))), schroder_count(n));
}

TEST(Families, PlanarTreesSatisfyQuadraticEquation) {
  const std::size_t N = 9;
  auto g = planar_trees().generating_series(N);
  auto t = PowerSeries::variable(N);
  EXPECT_EQ(t - g + g * g, PowerSeries(N));
}

TEST(Families, UnknownAndInfinite) {
  EXPECT_THROW(family("nope"), std::invalid_argument);
  EXPECT_THROW(paths().enumerate(2), std::domain_error);
  EXPECT_TRUE(paths().contains(Obj::parse("(path 0 1 2)")));
  EXPECT_EQ(family("motzkin-words").count(4), 4u);
  EXPECT_EQ(family("motzkin-words").count(5), 9u);
}

TEST(Formulas, PrintedValues) {
  EXPECT_EQ(fuss_catalan(2, 4), 14);
  EXPECT_EQ(narayana(4, 1), 3);
  EXPECT_EQ(schroder_count(3), 3);
  EXPECT_THROW(narayana(1, 0), std::domain_error);
  EXPECT_THROW(schroder_count(0), std::domain_error);
}

TEST(Formulas, NarayanaCountsLeftInternalChildren) {
  // Binary trees with n leaves whose number of internal left children is k.
  std::function<long(const Obj&)> left_internal = [&](const Obj& o) -> long {
    if (o.has_tag("leaf")) return 0;
    return (o[1].has_tag("node") ? 1 : 0) + left_internal(o[1]) + left_internal(o[2]);
  };
  for (long long n = 2; n <= 7; ++n)
    for (long long k = 0; k <= n - 2; ++k) {
      long c = 0;
      for (const auto& t : binary_trees_leaf().enumerate(n))
        if (left_internal(t) == k) ++c;
      EXPECT_EQ(narayana(n, k), c) << n << "," << k;
    }
}

TEST(Operations, EnumerationIsStable) {
  auto c = derive_unary(UnaryKind::List(), derive_unary(UnaryKind::Augmentation(), naturals()));
  auto first = c.enumerate(5);
  auto again = c.enumerate(5);
  EXPECT_EQ(first, again);
  EXPECT_EQ(counts(c, 0, 4), (std::vector<std::size_t>{1, 1, 2, 4, 8}));
}

TEST(Operations, UnaryExamples) {
  auto pos = derive_unary(UnaryKind::Augmentation(), naturals());
  EXPECT_EQ(counts(derive_unary(UnaryKind::Multiset(), pos), 0, 5),
            (std::vector<std::size_t>{1, 1, 2, 3, 5, 7}));
  // Distinct-part partitions by brute force over subsets of {1..n}.
  for (std::size_t n = 0; n <= 9; ++n) {
    std::size_t brute = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::size_t s = 0;
      for (std::size_t b = 0; b < n; ++b)
        if (mask & (1u << b)) s += b + 1;
      if (s == n) ++brute;
    }
    EXPECT_EQ(derive_unary(UnaryKind::Set(), pos).count(n), brute) << n;
  }
  EXPECT_THROW(derive_unary(UnaryKind::List(), naturals()).enumerate(2), std::domain_error);
  EXPECT_THROW(derive_unary(UnaryKind::Multiset(), naturals()).enumerate(2), std::domain_error);
}

TEST(Operations, BinaryExamples) {
  auto pos = derive_unary(UnaryKind::Augmentation(), naturals());
  auto unit_law = combine_binary(BinaryKind::composition, naturals(), singleton_collection());
  EXPECT_EQ(counts(unit_law, 0, 8), counts(naturals(), 0, 8));
  auto comp = combine_binary(BinaryKind::composition, naturals(), pos);
  EXPECT_EQ(counts(comp, 0, 4), (std::vector<std::size_t>{1, 1, 2, 4, 8}));
  // Each composed object is a composition read off the tuple.
  for (std::size_t n = 1; n <= 6; ++n) {
    std::set<std::vector<long long>> seen;
    for (const auto& o : comp.enumerate(n)) {
      std::vector<long long> parts;
      for (std::size_t i = 1; i < o[2].length(); ++i) parts.push_back(o[2][i].as_int());
      seen.insert(parts);
    }
    EXPECT_EQ(seen.size(), compositions().count(n));
  }
  auto had = combine_binary(BinaryKind::hadamard, binary_trees_node(), binary_trees_node());
  for (std::size_t n = 0; n <= 5; ++n)
    EXPECT_EQ(had.count(n), binary_trees_node().count(n) * binary_trees_node().count(n));
  EXPECT_THROW(combine_binary(BinaryKind::composition, naturals(), naturals()).enumerate(1),
               std::domain_error);
}

TEST(Operations, GeneratingSeriesMatchFormulas) {
  const std::size_t N = 8;
  auto pos = derive_unary(UnaryKind::Augmentation(), naturals());
  std::vector<GradedCollection> all = {naturals(), pos, compositions(), binary_trees_leaf(),
                                       motzkin_words(), words({"a", "b"}), singleton_collection()};
  std::vector<GradedCollection> augmented = {pos, binary_trees_leaf(), motzkin_words(),
                                             singleton_collection(), schroder_trees()};
  auto one = PowerSeries::constant(N, Scalar(1));
  for (const auto& a : all) {
    auto ga = a.generating_series(N);
    for (const auto& b : all) {
      auto gb = b.generating_series(N);
      EXPECT_EQ(combine_binary(BinaryKind::sum, a, b).generating_series(N), ga + gb);
      EXPECT_EQ(combine_binary(BinaryKind::cartesian_plus, a, b).generating_series(N), ga * gb);
      EXPECT_EQ(combine_binary(BinaryKind::hadamard, a, b).generating_series(N), hadamard(ga, gb));
    }
    for (const auto& b : augmented)
      EXPECT_EQ(combine_binary(BinaryKind::composition, a, b).generating_series(N),
                ps_compose(ga, b.generating_series(N)))
          << a.name() << " o " << b.name();
    // t^l (G - G restricted to [0, -l-1]), computed from a longer prefix of G.
    auto wide = a.generating_series(N + 3);
    for (long long l : {-2, -1, 0, 1, 3}) {
      PowerSeries low(N + 3);
      for (long long n = 0; n <= -l - 1; ++n) low[n] = wide[n];
      PowerSeries diff = wide - low;
      PowerSeries shift(N);
      for (long long n = 0; n <= static_cast<long long>(N); ++n)
        if (n - l >= 0) shift[n] = diff[n - l];
      EXPECT_EQ(derive_unary(UnaryKind::Suspension(l), a).generating_series(N), shift);
    }
    PowerSeries aug = ga;
    aug[0] = 0;
    EXPECT_EQ(derive_unary(UnaryKind::Augmentation(), a).generating_series(N), aug);
    for (long long m = 1; m <= 3; ++m) {
      PowerSeries col(N);
      Scalar mp = static_cast<long>(m);
      for (std::size_t n = 0; n <= N; ++n) {
        col[n] = ga[n] * mp;
        mp *= static_cast<long>(m);
      }
      EXPECT_EQ(derive_unary(UnaryKind::Coloration(m), a).generating_series(4),
                PowerSeries(4, std::vector<Scalar>(col.coefficients().begin(),
                                                   col.coefficients().begin() + 5)));
    }
  }
  for (const auto& c : augmented) {
    auto g = c.generating_series(N);
    EXPECT_EQ(derive_unary(UnaryKind::List(), c).generating_series(N), reciprocal(one - g));
    PowerSeries ms = one, st = one;
    for (std::size_t n = 1; n <= N; ++n) {
      std::size_t k = c.count(n);
      ms = ms * monomial_power_factor(N, n, true, k);
      st = st * monomial_power_factor(N, n, false, k);
    }
    EXPECT_EQ(derive_unary(UnaryKind::Multiset(), c).generating_series(N), ms) << c.name();
    EXPECT_EQ(derive_unary(UnaryKind::Set(), c).generating_series(N), st) << c.name();
  }
}
