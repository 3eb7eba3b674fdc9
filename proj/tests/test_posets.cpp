#include <gtest/gtest.h>

#include <random>

#include "operadica/collections/formulas.hpp"
#include "operadica/posets/poset.hpp"

using namespace operadica;

namespace {

// Descent set of a composition: its partial sums except the total.
std::set<long long> descents(const Obj& c) {
  std::set<long long> d;
  long long s = 0;
  auto parts = c.int_args();
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) d.insert(s += parts[i]);
  return d;
}

// Right-subtree sizes of the internal nodes in infix order.
void right_sizes(const Tree& t, std::vector<std::size_t>& out) {
  if (t.is_leaf()) return;
  right_sizes(t.children()[0], out);
  out.push_back(t.children()[1].degree());
  right_sizes(t.children()[1], out);
}

Poset chain2() {
  auto carrier = GradedCollection(
      "two", [](std::size_t n) { return n == 1 ? std::vector<Obj>{Obj::symbol("x"), Obj::symbol("y")} : std::vector<Obj>{}; },
      [](const Obj& o) { return o.is_symbol() ? 1LL : -1LL; });
  return Poset("chain2", carrier, [](const Obj& o) {
    return o.as_symbol() == "x" ? std::vector<Obj>{Obj::symbol("y")} : std::vector<Obj>{};
  });
}

IncidencePoly random_incidence(std::mt19937& rng, const Poset& p, std::size_t n) {
  IncidencePoly f{p.name(), n, {}};
  std::uniform_int_distribution<int> d(-3, 3);
  for (const auto& pr : p.order_pairs(n))
    if (rng() % 2) f.f.add(pr, d(rng));
  return f;
}

}  // namespace

TEST(Poset, ClosureExamples) {
  auto c2 = chain2();
  EXPECT_EQ(order_closure(c2, 1), (std::set<ObjPair>{{Obj::symbol("x"), Obj::symbol("x")},
                                                     {Obj::symbol("x"), Obj::symbol("y")},
                                                     {Obj::symbol("y"), Obj::symbol("y")}}));
  auto cube = cube_poset();
  EXPECT_TRUE(cube.leq(Obj::parse("(comp 1 1 1 1)"), Obj::parse("(comp 4)")));
  EXPECT_FALSE(cube.leq(Obj::parse("(comp 4)"), Obj::parse("(comp 1 1 1 1)")));
  auto tam = tamari_poset();
  Obj left = tree_to_binary_obj(Tree::parse("(b (b (b * *) *) *)"));
  Obj right = tree_to_binary_obj(Tree::parse("(b * (b * (b * *)))"));
  EXPECT_TRUE(tam.leq(left, right));
  EXPECT_FALSE(tam.leq(right, left));

  auto cyclic = Poset("cyclic", chain2().carrier(), [](const Obj& o) {
    return std::vector<Obj>{Obj::symbol(o.as_symbol() == "x" ? "y" : "x")};
  });
  try {
    cyclic.order(1);
    FAIL();
  } catch (const std::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("not a partial order"), std::string::npos);
  }
}

TEST(Poset, CubeOrderIsReverseDescentInclusion) {
  auto cube = cube_poset();
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto& els = cube.elements(n);
    for (const auto& l : els)
      for (const auto& v : els) {
        auto dl = descents(l), dv = descents(v);
        bool incl = std::includes(dl.begin(), dl.end(), dv.begin(), dv.end());
        EXPECT_EQ(cube.leq(l, v), incl) << l << " " << v;
      }
  }
}

TEST(Poset, MobiusOfCubeIsSignedLengthDifference) {
  auto cube = cube_poset();
  for (std::size_t n = 1; n <= 6; ++n) {
    auto mu = mobius(cube, n);
    for (const auto& [x, ups] : cube.order(n))
      for (const auto& y : ups) {
        long long dl = static_cast<long long>(x.length()) - static_cast<long long>(y.length());
        EXPECT_EQ(mu(x, y), Scalar(dl % 2 == 0 ? 1 : -1));
      }
  }
}

TEST(Poset, MobiusSmallCases) {
  auto c2 = chain2();
  EXPECT_EQ(mobius(c2, 1)(Obj::symbol("x"), Obj::symbol("y")), Scalar(-1));
  auto anti = Poset("anti", c2.carrier(), [](const Obj&) { return std::vector<Obj>{}; });
  EXPECT_EQ(mobius(anti, 1).f, incidence_unit(anti, 1).f);
}

TEST(Poset, IncidenceIdentities) {
  for (const auto& p : {cube_poset(), tamari_poset(), right_weak_poset()}) {
    for (std::size_t n = 1; n <= 5; ++n) {
      auto z = incidence_zeta(p, n), m = mobius(p, n), one = incidence_unit(p, n);
      EXPECT_EQ(incidence_product(m, z), one) << p.name() << " " << n;
      EXPECT_EQ(incidence_product(z, m), one) << p.name() << " " << n;
      EXPECT_EQ(incidence_product(one, z), z);
    }
    // zeta * zeta counts interval elements.
    auto z = incidence_zeta(p, 4);
    auto zz = incidence_product(z, z);
    const auto& ord = p.order(4);
    for (const auto& [x, ups] : ord)
      for (const auto& y : ups) {
        long long card = 0;
        for (const auto& w : ups) card += ord.at(w).count(y) ? 1 : 0;
        EXPECT_EQ(zz(x, y), Scalar(static_cast<long>(card)));
      }
  }
  EXPECT_THROW(incidence_product(incidence_zeta(cube_poset(), 3), incidence_zeta(cube_poset(), 4)),
               std::invalid_argument);
}

TEST(Poset, IncidenceProductAssociative) {
  std::mt19937 rng(17);
  for (const auto& p : {cube_poset(), tamari_poset(), right_weak_poset()})
    for (std::size_t n = 1; n <= 4; ++n)
      for (int k = 0; k < 50; ++k) {
        auto a = random_incidence(rng, p, n), b = random_incidence(rng, p, n), c = random_incidence(rng, p, n);
        ASSERT_EQ(incidence_product(incidence_product(a, b), c), incidence_product(a, incidence_product(b, c)));
      }
}

TEST(Poset, BasisChange) {
  auto c2 = chain2();
  auto bc = basis_change_matrix(c2, 1);
  EXPECT_EQ(bc.forward, from_dense({{1, 1}, {0, 1}}, 2));
  EXPECT_EQ(bc.inverse, from_dense({{1, -1}, {0, 1}}, 2));
  for (const auto& p : {tamari_poset(), right_weak_poset(), cube_poset()})
    for (std::size_t n = 1; n <= 4; ++n) {
      auto b = basis_change_matrix(p, n);
      EXPECT_EQ(multiply(b.forward, b.inverse), identity_matrix(b.order.size())) << p.name() << n;
      EXPECT_EQ(multiply(b.inverse, b.forward), identity_matrix(b.order.size())) << p.name() << n;
    }
  auto rw3 = basis_change_matrix(right_weak_poset(), 3);
  EXPECT_EQ(rw3.forward.shape(), "6x6");
}

TEST(Poset, TamariSizes) {
  auto tam = tamari_poset();
  EXPECT_EQ(tam.elements(4).size(), 14u);
  for (std::size_t n = 2; n <= 5; ++n)
    EXPECT_EQ(BigInt(static_cast<unsigned long>(tam.covers(n).size())), binomial(2 * static_cast<long long>(n) - 1, static_cast<long long>(n) - 2));
  EXPECT_EQ(tam.covers(4).size(), 21u);
}

TEST(Poset, TamariMatchesRightArmComparison) {
  // Independent description: t <= t' iff right-subtree sizes grow componentwise (infix order).
  auto tam = tamari_poset();
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& x : tam.elements(n))
      for (const auto& y : tam.elements(n)) {
        std::vector<std::size_t> rx, ry;
        right_sizes(binary_obj_to_tree(x), rx);
        right_sizes(binary_obj_to_tree(y), ry);
        bool le = true;
        for (std::size_t i = 0; i < rx.size(); ++i) le = le && rx[i] <= ry[i];
        EXPECT_EQ(tam.leq(x, y), le) << x << " " << y;
      }
}

TEST(Poset, TamariIsRotationRewritingOrder) {
  auto tam = tamari_poset();
  auto rot = rotation_system();
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& x : tam.elements(n)) {
      std::set<Obj> reach{x};
      std::vector<Tree> todo{binary_obj_to_tree(x)};
      while (!todo.empty()) {
        Tree t = todo.back();
        todo.pop_back();
        for (const auto& s : rot.successors(t))
          if (reach.insert(tree_to_binary_obj(s)).second) todo.push_back(s);
      }
      EXPECT_EQ(reach, tam.order(n).at(x));
    }
}

TEST(Poset, RightWeak) {
  auto rw = right_weak_poset();
  EXPECT_EQ(rw.elements(4).size(), 24u);
  Obj id = Obj::parse("(perm 1 2 3 4)"), top = Obj::parse("(perm 4 3 2 1)");
  for (const auto& x : rw.elements(4)) {
    EXPECT_TRUE(rw.leq(id, x));
    EXPECT_TRUE(rw.leq(x, top));
  }
}

TEST(Poset, DualAndHadamard) {
  auto cube = cube_poset();
  auto d = dual_poset(cube);
  EXPECT_TRUE(d.leq(Obj::parse("(comp 4)"), Obj::parse("(comp 1 1 1 1)")));
  auto h = hadamard_poset(cube, cube);
  Obj lo = Obj::parse("(had (comp 1 1 1) (comp 1 2))"), hi = Obj::parse("(had (comp 3) (comp 3))");
  EXPECT_TRUE(h.leq(lo, hi));
  EXPECT_FALSE(h.leq(hi, lo));
  // Mobius of a product is the product of Mobius functions.
  auto mh = mobius(h, 3), mc = mobius(cube, 3);
  for (const auto& [pr, c] : mh.f) EXPECT_EQ(c, mc(pr.first[1], pr.second[1]) * mc(pr.first[2], pr.second[2]));
  EXPECT_THROW(builtin_poset("lattice"), std::invalid_argument);
}
