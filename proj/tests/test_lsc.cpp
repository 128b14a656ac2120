#include <gtest/gtest.h>

#include "cuntzkit/oracle.hpp"
#include "cuntzkit/random.hpp"

using namespace cuntzkit;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

SpacePtr arc() {
  static SpacePtr s = make_space(Space::unit_arc());
  return s;
}

OpenSet iv(Rational a, Rational b, bool l = false, bool r = false) { return OpenSet::interval(arc(), 0, a, b, l, r); }
LscElement chi(Rational a, Rational b, bool l = false, bool r = false) { return LscElement::indicator(iv(a, b, l, r)); }
LscElement levels(std::vector<OpenSet> ls, OpenSet inf = OpenSet::empty(arc())) {
  return LscElement(arc(), std::move(ls), std::move(inf));
}
LscElement e() { return LscElement::unit(arc()); }
LscElement zero() { return LscElement::zero(arc()); }
Point at(Rational x) { return {0, x}; }

}  // namespace

TEST(Eval, CountsLevels) {
  auto f = levels({iv(0, q(1, 2)), iv(0, q(1, 4))});
  EXPECT_EQ(f.eval(at(q(1, 8))), (ExtNat{2, false}));
  EXPECT_EQ(f.eval(at(q(3, 4))), (ExtNat{0, false}));
  auto g = LscElement::infinite_on(iv(0, q(1, 4)));
  EXPECT_EQ(g.eval(at(q(1, 8))), ExtNat::inf());
  EXPECT_THROW(f.eval({0, q(2)}), PreconditionViolated);
  EXPECT_THROW(f.eval({1, q(0)}), PreconditionViolated);
}

TEST(Canonical, RejectsIncreasingLevelsAndStripsEmptyOnes) {
  EXPECT_THROW(levels({iv(0, q(1, 4)), iv(0, q(1, 2))}), MalformedInput);
  EXPECT_THROW(levels({iv(0, q(1, 4))}, iv(0, q(1, 2))), MalformedInput);
  EXPECT_EQ(levels({iv(0, q(1, 2)), OpenSet::empty(arc())}), chi(0, q(1, 2)));
  EXPECT_TRUE(levels({OpenSet::empty(arc())}).is_zero());
}

TEST(Order, Examples) {
  EXPECT_TRUE(leq(chi(0, q(1, 2)), chi(0, q(3, 4))));
  EXPECT_FALSE(leq(chi(0, q(3, 4)), chi(0, q(1, 2))));
  EXPECT_EQ(join(chi(0, q(1, 2)), chi(q(1, 4), q(3, 4))), chi(0, q(3, 4)));
  auto two = scalar_mul(2, chi(0, q(1, 2)));
  EXPECT_EQ(meet(two, chi(q(1, 4), 1, false, true)), chi(q(1, 4), q(1, 2)));
  EXPECT_TRUE(leq(two, infinity_of(chi(0, q(1, 2)))));
  EXPECT_FALSE(leq(infinity_of(chi(0, q(1, 2))), scalar_mul(5, chi(0, q(1, 2)))));
}

TEST(Add, Examples) {
  auto f = levels({iv(0, q(1, 2)), iv(0, q(1, 4))});
  EXPECT_EQ(add(f, chi(q(1, 8), q(3, 4))), levels({iv(0, q(3, 4)), iv(0, q(1, 2)), iv(q(1, 8), q(1, 4))}));
  EXPECT_EQ(add(f, zero()), f);
  EXPECT_EQ(add(chi(0, q(1, 2)), chi(q(1, 4), q(3, 4))), levels({iv(0, q(3, 4)), iv(q(1, 4), q(1, 2))}));
  auto inf = LscElement::infinite_on(iv(q(1, 8), q(3, 8)));
  auto s = add(f, inf);
  EXPECT_EQ(s.infinity(), iv(q(1, 8), q(3, 8)));
  EXPECT_EQ(s.eval(at(q(1, 16))), (ExtNat{2, false}));
}

TEST(WayBelow, Examples) {
  EXPECT_TRUE(way_below(chi(q(1, 4), q(1, 2)), chi(0, q(3, 4))));
  EXPECT_FALSE(way_below(chi(0, q(1, 2)), chi(0, q(1, 2))));
  EXPECT_TRUE(way_below(e(), e()));
  EXPECT_TRUE(is_compact(e()));
  EXPECT_TRUE(way_below(chi(0, q(1, 2), true), chi(0, q(3, 4), true)));
  EXPECT_FALSE(way_below(LscElement::infinite_on(iv(q(1, 4), q(1, 2))), infinity_of(e())));
  // The oracle agrees on the same cases.
  EXPECT_TRUE(oracle::way_below(chi(q(1, 4), q(1, 2)), chi(0, q(3, 4))));
  EXPECT_FALSE(oracle::way_below(chi(0, q(1, 2)), chi(0, q(1, 2))));
  EXPECT_TRUE(oracle::way_below(e(), e()));
}

TEST(OrderedSum, Examples) {
  auto out = ordered_sum_pairwise({chi(0, q(1, 2))}, {chi(q(1, 4), q(3, 4))}, arc());
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0], chi(0, q(3, 4)));
  EXPECT_EQ(out[1], chi(q(1, 4), q(1, 2)));
  auto out2 = ordered_sum_pairwise({e()}, {zero()}, arc());
  ASSERT_EQ(out2.size(), 2u);
  EXPECT_EQ(out2[0], e());
  EXPECT_TRUE(out2[1].is_zero());
  std::vector<LscElement> xs{chi(0, q(1, 2)), chi(0, q(1, 4))};
  std::vector<LscElement> ys{chi(q(1, 8), 1, false, true), chi(q(1, 2), q(3, 4))};
  auto out4 = ordered_sum_pairwise(xs, ys, arc());
  ASSERT_EQ(out4.size(), 4u);
  for (std::size_t i = 1; i < out4.size(); ++i) EXPECT_TRUE(leq(out4[i], out4[i - 1]));
  auto lhs = add(add(xs[0], ys[0]), add(xs[1], ys[1]));
  EXPECT_EQ(sum(out4, arc()), lhs);
  EXPECT_THROW(ordered_sum_pairwise({chi(0, q(1, 4)), chi(0, q(1, 2))}, {zero()}, arc()), PreconditionViolated);
  EXPECT_THROW(ordered_sum_pairwise({scalar_mul(2, e())}, {zero()}, arc()), PreconditionViolated);
}

TEST(OrderedSum, FoldNormalizes) {
  std::vector<LscElement> terms{chi(q(1, 2), 1, false, true), chi(0, q(3, 4)), chi(q(1, 4), q(5, 8))};
  auto out = ofs_normalize(terms, arc());
  ASSERT_EQ(out.size(), 3u);
  for (std::size_t i = 1; i < out.size(); ++i) EXPECT_TRUE(leq(out[i], out[i - 1]));
  auto total = sum(terms, arc());
  EXPECT_TRUE(oracle::agrees(sum(out, arc()), {&terms[0], &terms[1], &terms[2]}, [&](const Point& p) {
    return terms[0].eval(p) + terms[1].eval(p) + terms[2].eval(p);
  }));
  EXPECT_EQ(sum(out, arc()), total);
  auto moved = ofs_normalize({zero(), zero(), e()}, arc());
  ASSERT_EQ(moved.size(), 3u);
  EXPECT_EQ(moved[0], e());
  EXPECT_TRUE(moved[1].is_zero());
  EXPECT_TRUE(moved[2].is_zero());
  std::vector<LscElement> sorted{e(), chi(0, q(1, 2)), chi(0, q(1, 4))};
  EXPECT_EQ(ofs_normalize(sorted, arc()), sorted);
}

TEST(Decompose, Examples) {
  auto two = scalar_mul(2, chi(0, q(1, 2)));
  auto d = decompose_below_ne(two, 2);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0], chi(0, q(1, 2)));
  EXPECT_EQ(d[1], chi(0, q(1, 2)));
  auto d2 = decompose_below_ne(add(e(), chi(0, q(1, 4))), 3);
  ASSERT_EQ(d2.size(), 2u);
  EXPECT_EQ(d2[0], e());
  EXPECT_EQ(d2[1], chi(0, q(1, 4)));
  auto y = levels({iv(0, q(3, 4)), iv(q(1, 4), q(1, 2))});
  auto d3 = decompose_below_ne(y, 2);
  EXPECT_EQ(sum(d3, arc()), y);
  EXPECT_THROW(decompose_below_ne(y, 1), PreconditionViolated);
  EXPECT_THROW(decompose_below_ne(infinity_of(e()), 5), PreconditionViolated);
}

TEST(AlmostComplement, Examples) {
  auto y = chi(0, q(1, 2), true, false);
  EXPECT_EQ(almost_complement(y, e()), chi(q(1, 2), 1, false, true));
  EXPECT_EQ(almost_complement(zero(), e()), e());
  EXPECT_TRUE(almost_complement(e(), e()).is_zero());
  EXPECT_THROW(almost_complement(e(), chi(0, q(1, 2))), PreconditionViolated);
  EXPECT_THROW(almost_complement(infinity_of(e()), infinity_of(e())), PreconditionViolated);
}

TEST(AlmostComplement, TermwiseFormulaIsNotTheAdjoint) {
  // y = χ(0,1/2), z = χ(0,1) + χ(0,1/2). x = χ(0,1) satisfies x + y <= z, so
  // y \ z must dominate it, including at 1/2.
  auto y = chi(0, q(1, 2));
  auto z = add(chi(0, 1), chi(0, q(1, 2)));
  auto x = chi(0, 1);
  EXPECT_TRUE(leq(add(x, y), z));
  auto yz = almost_complement(y, z);
  EXPECT_TRUE(leq(x, yz));
  EXPECT_EQ(yz, x);
  // Σ termwise complements of the level decompositions misses the point 1/2.
  auto termwise = add(almost_complement(chi(0, q(1, 2)), chi(0, 1)), almost_complement(zero(), chi(0, q(1, 2))));
  EXPECT_FALSE(leq(x, termwise));
}

TEST(AlmostComplement, UnboundedTarget) {
  auto y = chi(q(1, 4), q(3, 4));
  auto z = add(e(), LscElement::infinite_on(iv(0, q(1, 2))));
  auto yz = almost_complement(y, z);
  EXPECT_EQ(yz.infinity(), iv(0, q(1, 2)));
  EXPECT_EQ(yz.eval(at(q(5, 8))), (ExtNat{0, false}));
  EXPECT_EQ(yz.eval(at(q(7, 8))), (ExtNat{1, false}));
  EXPECT_EQ(yz.eval(at(q(1, 8))), ExtNat::inf());
}

TEST(Infinity, Examples) {
  EXPECT_EQ(infinity_of(chi(0, q(1, 2))).infinity(), iv(0, q(1, 2)));
  auto x = add(scalar_mul(2, chi(0, q(1, 2))), chi(q(1, 4), q(3, 4)));
  EXPECT_EQ(infinity_of(x), infinity_of(meet(x, e())));
  EXPECT_EQ(infinity_of(x).infinity(), iv(0, q(3, 4)));
}

class LscProperties : public ::testing::Test {
 protected:
  Rng rng{777};
};

TEST_F(LscProperties, PointwiseOracle) {
  for (int i = 0; i < 300; ++i) {
    auto s = random_space(rng, 3);
    auto f = random_element(rng, s, 3, 25), g = random_element(rng, s, 3, 25);
    ASSERT_TRUE(oracle::agrees(add(f, g), {&f, &g}, [&](const Point& p) { return f.eval(p) + g.eval(p); }));
    ASSERT_TRUE(oracle::agrees(join(f, g), {&f, &g}, [&](const Point& p) { return std::max(f.eval(p), g.eval(p)); }));
    ASSERT_TRUE(oracle::agrees(meet(f, g), {&f, &g}, [&](const Point& p) { return std::min(f.eval(p), g.eval(p)); }));
    ASSERT_EQ(leq(f, g), oracle::pointwise_leq(f, g));
  }
}

TEST_F(LscProperties, LatticeOrderedMonoidLaws) {
  for (int i = 0; i < 300; ++i) {
    auto s = random_space(rng, 3);
    auto f = random_element(rng, s, 2, 20), g = random_element(rng, s, 2, 20), h = random_element(rng, s, 2, 20);
    ASSERT_EQ(add(f, g), add(join(f, g), meet(f, g)));
    ASSERT_EQ(meet(f, join(g, h)), join(meet(f, g), meet(f, h)));
    ASSERT_EQ(add(f, join(g, h)), join(add(f, g), add(f, h)));
    ASSERT_EQ(add(f, add(g, h)), add(add(f, g), h));
    ASSERT_EQ(add(f, g), add(g, f));
  }
}

TEST_F(LscProperties, WayBelowMatchesOracle) {
  int positives = 0;
  for (int i = 0; i < 150; ++i) {
    auto s = random_space(rng, 2);
    auto g = random_element(rng, s, 2, 15);
    auto f = coin(rng) ? random_element(rng, s, 2, 5) : meet(random_element(rng, s, 2, 5), g);
    bool wb = way_below(f, g);
    positives += wb;
    ASSERT_EQ(wb, oracle::way_below(f, g));
  }
  EXPECT_GT(positives, 10);
}

TEST_F(LscProperties, AlmostComplementAdjunction) {
  for (int i = 0; i < 150; ++i) {
    auto s = random_space(rng, 2);
    auto z = random_element(rng, s, 3, 30);
    auto y = meet(random_element(rng, s, 2, 0), z);
    auto yz = almost_complement(y, z);
    ASSERT_TRUE(oracle::sum_below(yz, y, z));
    for (int k = 0; k < 5; ++k) {
      auto x = random_element(rng, s, 3, 10);
      ASSERT_EQ(oracle::sum_below(x, y, z), oracle::pointwise_leq(x, yz));
    }
  }
}
