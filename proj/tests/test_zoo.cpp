#include <gtest/gtest.h>

#include "operadica/collections/formulas.hpp"
#include "operadica/zoo/zoo.hpp"

using namespace operadica;

namespace {

BigInt motzkin(long long n) {
  // M(0) = 1, M(k+1) = M(k) + sum_{j=0}^{k-1} M(j) M(k-1-j)
  std::vector<BigInt> m{1};
  for (long long k = 0; k < n; ++k) {
    BigInt s = m[k];
    for (long long j = 0; j + 1 <= k; ++j) s += m[j] * m[k - 1 - j];
    m.push_back(s);
  }
  return m[n];
}

BigInt factorial(long long n) {
  BigInt f = 1;
  for (long k = 2; k <= n; ++k) f *= k;
  return f;
}

BigInt count(const Operad& op, long long n) {
  return BigInt(static_cast<unsigned long>(op.carrier().count(static_cast<std::size_t>(n))));
}

Obj node(const Obj& l, const Obj& r) { return Obj::tagged("node", l, r); }
const Obj L = Obj::tagged("leaf");

}  // namespace

TEST(Zoo, WorkedCompositions) {
  auto per = per_operad();
  EXPECT_EQ(element_text("per", per.compose_object(parse_element("per", "7415623"), 4, parse_element("per", "231"))),
            "941675823");
  EXPECT_EQ(per.compose_object(parse_element("per", "123"), 2, parse_element("per", "12")), parse_element("per", "1234"));
  auto dias = dias_operad();
  EXPECT_EQ(dias.compose_object(parse_element("dias", "e 3 2"), 1, parse_element("dias", "e 2 2")), parse_element("dias", "e 4 3"));
  EXPECT_EQ(dias.compose_object(parse_element("dias", "e 3 2"), 2, parse_element("dias", "e 2 1")), parse_element("dias", "e 4 2"));
  EXPECT_EQ(dias.compose_object(parse_element("dias", "e 3 2"), 3, parse_element("dias", "e 2 1")), parse_element("dias", "e 4 2"));
  auto motz = motz_operad();
  EXPECT_EQ(element_text("motz", motz.compose_object(parse_element("motz", "0112321010"), 4, parse_element("motz", "0122110"))),
            "0112344332321010");
  // Dup: both sides of the first relation give the left comb with three nodes.
  auto dup = dup_operad();
  Obj l = node(node(L, L), L);
  EXPECT_EQ(dup.compose_object(l, 1, l), node(node(node(L, L), L), L));
  EXPECT_EQ(dup.compose_object(l, 2, l), node(node(node(L, L), L), L));
  auto mag = mag_operad();
  EXPECT_EQ(mag.compose_object(node(L, node(L, L)), 2, node(L, L)), node(L, node(node(L, L), L)));
}

TEST(Zoo, IndexOutOfRange) {
  for (const auto& name : operad_names()) {
    auto op = operad_by_name(name);
    const auto& xs = op.carrier().enumerate_ref(2);
    ASSERT_FALSE(xs.empty()) << name;
    EXPECT_THROW(op.compose(xs[0], 3, xs[0]), std::out_of_range) << name;
    EXPECT_THROW(op.compose(xs[0], 0, xs[0]), std::out_of_range) << name;
  }
}

TEST(Zoo, TConstruction) {
  auto tf = t_construction(free_monoid());
  EXPECT_EQ(element_text("t-free", tf.compose_object(parse_element("t-free", "aa,ba,b,e,a", tf), 3,
                                                     parse_element("t-free", "ab,e,a", tf))),
            "aa,ba,bab,b,ba,e,a");
  auto t1 = t_construction(trivial_monoid());
  EXPECT_EQ(t1.compose_object(parse_element("t-trivial", "11111", t1), 3, parse_element("t-trivial", "11", t1)).length() - 1, 6u);
  auto tm = t_construction(max_monoid());
  EXPECT_EQ(element_text("t-max", tm.compose_object(parse_element("t-max", "11011", tm), 4, parse_element("t-max", "01", tm))), "110111");
  EXPECT_EQ(element_text("t-max", tm.compose_object(parse_element("t-max", "11011", tm), 3, parse_element("t-max", "01", tm))), "110111");
  EXPECT_FALSE(tm.combinatorial());
  EXPECT_TRUE(t1.combinatorial());
  EXPECT_THROW(parse_element("t-max", "(t)", tm), std::invalid_argument);

  MonoidSpec broken = plus_monoid();
  broken.product = [](const Obj& a, const Obj& b) { return Obj::integer(a.as_int() - b.as_int()); };
  EXPECT_THROW(verify_monoid(broken), std::logic_error);
}

TEST(Zoo, Embeddings) {
  auto d = dias_embedding_check(6);
  EXPECT_TRUE(d.ok) << d.message;
  EXPECT_EQ(d.sizes, (std::vector<std::size_t>{1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(dias_of_max_word(Obj::int_list("t", {0})), Obj::tagged("e", 1LL, 1LL));
  EXPECT_EQ(dias_of_max_word(Obj::int_list("t", {1, 1, 0, 1, 1})), Obj::tagged("e", 5LL, 3LL));
  auto a = as_embedding_check(6);
  EXPECT_TRUE(a.ok) << a.message;
  auto m = motz_embedding_check(7);
  EXPECT_TRUE(m.ok) << m.message;
}

TEST(Zoo, HilbertPrefixes) {
  auto as = as_operad(), per = per_operad(), dias = dias_operad(), mag = mag_operad(), dup = dup_operad(),
       motz = motz_operad(), nct = nct_operad();
  for (long long n = 1; n <= 7; ++n) {
    EXPECT_EQ(count(as, n), BigInt(1));
    EXPECT_EQ(count(per, n), factorial(n));
    EXPECT_EQ(count(dias, n), BigInt(static_cast<long>(n)));
    EXPECT_EQ(count(mag, n), fuss_catalan(2, n - 1));
    EXPECT_EQ(count(dup, n), fuss_catalan(2, n));
    EXPECT_EQ(count(motz, n), motzkin(n - 1));
    EXPECT_EQ(count(nct, n), binomial(3 * n - 2, n - 1) / static_cast<long>(n));
  }
  std::vector<long long> printed{1, 2, 7, 30, 143};
  for (std::size_t n = 1; n <= 5; ++n) EXPECT_EQ(nct.carrier().count(n), printed[n - 1]);
  std::vector<long long> m{1, 1, 2, 4, 9, 21, 51};
  for (std::size_t n = 1; n <= 7; ++n) EXPECT_EQ(motz.carrier().count(n), m[n - 1]);
}

TEST(Zoo, NoncrossingTrees) {
  auto nct = nct_operad();
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& x : nct.carrier().enumerate_ref(n)) EXPECT_NO_THROW(NCTree::from_obj(x));
  auto t = NCTree::from_obj(Obj::parse("(nct 4 ((1 2) (2 4) (1 5) (3 4)))"));
  EXPECT_EQ(t.size, 4);
  EXPECT_THROW(NCTree::from_obj(Obj::parse("(nct 3 ((1 3) (2 4) (1 4)))")), std::invalid_argument);           // crossing
  EXPECT_THROW(NCTree::from_obj(Obj::parse("(nct 3 ((1 2) (2 4) (3 4)))")), std::invalid_argument);           // no base
  EXPECT_THROW(NCTree::from_obj(Obj::parse("(nct 3 ((1 2) (1 4) (2 4)))")), std::invalid_argument);           // cycle
  EXPECT_THROW(NCTree::from_obj(Obj::parse("(nct 2 ((1 3)))")), std::invalid_argument);                       // too few arcs
  Obj l = Obj::parse("(nct 2 ((1 2) (1 3)))"), r = Obj::parse("(nct 2 ((1 3) (2 3)))");
  EXPECT_EQ(nct.compose_object(r, 1, l), nct.compose_object(l, 2, r));
  EXPECT_EQ(nct.compose_object(l, 1, l), Obj::parse("(nct 3 ((1 2) (1 3) (1 4)))"));
  EXPECT_EQ(nct.compose_object(r, 2, r), Obj::parse("(nct 3 ((1 4) (2 4) (3 4)))"));
}

TEST(Zoo, AxiomsOfEveryOperad) {
  std::vector<Operad> ops;
  for (const auto& name : operad_names()) ops.push_back(operad_by_name(name));
  ops.push_back(bud_operad(as_operad(), 2));
  ops.push_back(bud_operad(dias_operad(), 2));
  for (const auto& op : ops) {
    auto v = check_axioms(op, 4, 1000, 7, 7);
    EXPECT_TRUE(v.ok) << op.name() << ": " << v.law << " " << v.message;
  }
}

TEST(Zoo, ElementText) {
  for (const auto& name : operad_names()) {
    auto op = operad_by_name(name);
    for (std::size_t n = 1; n <= 3; ++n)
      for (const auto& x : op.carrier().enumerate_ref(n)) EXPECT_EQ(parse_element(name, element_text(name, x), op), x) << name;
  }
  EXPECT_EQ(parse_element("per", "4 1 3 2 5"), parse_element("per", "41325"));
  EXPECT_EQ(parse_element("nct", "(nct 4 ((1 2)(2 4)(1 5)(3 4)))"), Obj::parse("(nct 4 ((1 2) (1 5) (2 4) (3 4)))"));
  EXPECT_THROW(parse_element("dias", "e 2 3"), std::invalid_argument);
  EXPECT_THROW(parse_element("per", "1224"), std::invalid_argument);
  EXPECT_THROW(operad_by_name("lie"), std::invalid_argument);
}

TEST(Zoo, PerHasNoPresentation) {
  try {
    presentation_of("per");
    FAIL();
  } catch (const std::invalid_argument& err) {
    EXPECT_NE(std::string(err.what()).find("no finite presentation"), std::string::npos);
  }
}
