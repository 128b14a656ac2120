#include <gtest/gtest.h>

#include <algorithm>

#include "cuntzkit/chains.hpp"
#include "cuntzkit/random.hpp"

using namespace cuntzkit;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

SpacePtr arc() {
  static SpacePtr s = make_space(Space::unit_arc());
  return s;
}
SpacePtr circle() {
  static SpacePtr s = make_space(Space::unit_circle());
  return s;
}
OpenSet iv(const SpacePtr& s, Rational a, Rational b, bool l = false, bool r = false, std::size_t comp = 0) {
  return OpenSet::interval(s, comp, a, b, l, r);
}

/// Every closed window [s, s + w] on a fine grid lies in one cover set.
bool windows_fit(const Cover& cover, const SpacePtr& sp, const Rational& w, long steps = 256) {
  for (std::size_t ci = 0; ci < sp->size(); ++ci) {
    const auto& c = (*sp)[ci];
    if (c.kind == ComponentKind::point) continue;
    for (long k = 0; k <= steps; ++k) {
      Rational s = c.length * k / steps;
      Rational e = s + w;
      if (c.kind == ComponentKind::arc && e > c.length) e = c.length;
      if (c.kind == ComponentKind::circle && s >= c.length) continue;
      if (c.kind == ComponentKind::circle && e - s > c.length) e = s + c.length;
      IntervalSoup soup;
      soup.sets.resize(sp->size());
      soup.sets[ci].push_back({s, e, true, true});
      auto win = ClosedSet::from_intervals(sp, soup);
      bool ok = std::any_of(cover.begin(), cover.end(), [&](const OpenSet& u) { return win.subset_of(u); });
      if (!ok) return false;
    }
  }
  return true;
}

}  // namespace

TEST(EpsilonChain, SevenWindowsOnTheUnitArc) {
  auto target = OpenSet::full(arc());
  auto w = epsilon_chain(target, q(1, 3));
  ASSERT_EQ(w.pieces.size(), 7u);
  EXPECT_EQ(w.mesh, q(1, 4));
  EXPECT_EQ(w.pieces[0], iv(arc(), 0, q(1, 4), true, false));
  EXPECT_EQ(w.pieces[1], iv(arc(), q(1, 8), q(3, 8)));
  EXPECT_EQ(w.pieces[3], iv(arc(), q(3, 8), q(5, 8)));
  EXPECT_EQ(w.pieces[6], iv(arc(), q(3, 4), 1, false, true));
  EXPECT_TRUE(verify_witness(w, target, {target}));
  auto swapped = w;
  std::swap(swapped.pieces[0], swapped.pieces[2]);
  EXPECT_FALSE(verify_witness(swapped, target, {target}));
}

TEST(EpsilonChain, LargeEpsGivesOneWindow) {
  auto target = OpenSet::full(arc());
  auto w = epsilon_chain(target, q(2));
  ASSERT_EQ(w.pieces.size(), 1u);
  EXPECT_EQ(w.pieces[0], target);
  EXPECT_TRUE(verify_witness(w, target, {target}));
}

TEST(EpsilonChain, Errors) {
  EXPECT_THROW(epsilon_chain(OpenSet::full(circle()), q(1, 2)), NotChainable);
  EXPECT_THROW(epsilon_chain(iv(arc(), 0, q(1, 4)).unite(iv(arc(), q(1, 2), 1)), q(1, 2)), PreconditionViolated);
  EXPECT_THROW(epsilon_chain(OpenSet::empty(arc()), q(1, 2)), PreconditionViolated);
  EXPECT_THROW(epsilon_chain(OpenSet::full(arc()), q(0)), PreconditionViolated);
}

TEST(EpsilonChain, CircleArcsAndPoints) {
  auto target = iv(circle(), q(3, 4), q(3, 2));
  auto w = epsilon_chain(target, q(1, 10));
  EXPECT_TRUE(verify_witness(w, target, {target}));
  EXPECT_LT(w.mesh, q(1, 10));
  auto punctured = iv(circle(), q(1, 3), q(4, 3));
  auto wp = epsilon_chain(punctured, q(1, 5));
  EXPECT_TRUE(verify_witness(wp, punctured, {punctured}));
  auto pt = make_space(Space({Component::point()}));
  auto wpt = epsilon_chain(OpenSet::full(pt), q(1));
  EXPECT_TRUE(verify_witness(wpt, OpenSet::full(pt), {OpenSet::full(pt)}));
}

TEST(VerifyWitness, SinglePieceAndDefects) {
  auto full = OpenSet::full(arc());
  ChainWitness w{ChainKind::chain, {full}, 1, {0}};
  EXPECT_TRUE(verify_witness(w, full, {full}));
  w.mesh = q(1, 2);
  EXPECT_EQ(witness_defect(w, full, {full}).value(), "stored mesh differs from the largest piece diameter");
  ChainWitness gap{ChainKind::chain, {iv(arc(), 0, q(1, 2), true), iv(arc(), q(1, 2), 1, false, true)}, q(1, 2), {0, 0}};
  EXPECT_FALSE(verify_witness(gap, full, {full}));
  gap.kind = ChainKind::almost_chain;
  EXPECT_FALSE(verify_witness(gap, full, {full}));  // misses 1/2
}

TEST(Refine, TwoDisjointArcs) {
  auto two = make_space(Space({Component::arc(1), Component::arc(1)}));
  auto a = OpenSet::component(two, 0), b = OpenSet::component(two, 1);
  auto target = OpenSet::full(two);
  auto w = refine_to_almost_chain({a, b}, target);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->kind, ChainKind::almost_chain);
  ASSERT_EQ(w->pieces.size(), 2u);
  EXPECT_TRUE(verify_witness(*w, target, {a, b}));
}

TEST(Refine, OverlappingHalves) {
  Cover cover{iv(arc(), 0, q(2, 3), true), iv(arc(), q(1, 3), 1, false, true)};
  auto target = OpenSet::full(arc());
  auto w = refine_to_almost_chain(cover, target);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->kind, ChainKind::chain);
  EXPECT_TRUE(verify_witness(*w, target, cover));
}

TEST(Refine, FullCircleIsImpossible) {
  Cover cover{iv(circle(), 0, q(2, 3)), iv(circle(), q(1, 2), q(7, 6))};
  EXPECT_FALSE(refine_to_almost_chain(cover, OpenSet::full(circle())).has_value());
  EXPECT_THROW(refine_to_almost_chain({iv(circle(), 0, q(1, 2))}, OpenSet::full(circle())), PreconditionViolated);
}

TEST(Deciders, Classification) {
  EXPECT_TRUE(decide_chainable(OpenSet::full(arc())));
  EXPECT_FALSE(decide_chainable(OpenSet::full(circle())));
  EXPECT_TRUE(decide_chainable(iv(circle(), 0, q(1, 2))));
  Space mixed({Component::arc(1), Component::circle(1)});
  EXPECT_FALSE(decide_almost_chainable(mixed));
  Space pieces({Component::arc(1), Component::arc(2), Component::point()});
  EXPECT_TRUE(decide_piecewise_chainable(pieces));
  EXPECT_TRUE(decide_almost_chainable(pieces));
  EXPECT_FALSE(decide_chainable(OpenSet::full(make_space(pieces))));
}

TEST(Lebesgue, Examples) {
  Cover halves{iv(arc(), 0, q(2, 3), true), iv(arc(), q(1, 3), 1, false, true)};
  auto d = lebesgue_number(halves, arc());
  EXPECT_EQ(d, q(1, 3));
  EXPECT_TRUE(windows_fit(halves, arc(), d * q(999, 1000)));
  EXPECT_EQ(lebesgue_number({OpenSet::full(arc())}, arc()), 2);
  auto two = make_space(Space({Component::arc(1), Component::arc(1)}));
  auto d2 = lebesgue_number({OpenSet::component(two, 0), OpenSet::component(two, 1)}, two);
  EXPECT_EQ(d2, 2);
  EXPECT_THROW(lebesgue_number({iv(arc(), 0, q(1, 2), true)}, arc()), PreconditionViolated);
}

TEST(BoundedSearch, CircleHasNoSmallChainButArcDoes) {
  auto res = bounded_chain_search(circle(), 0, 4, PiecePredicate::mesh_below, q(1, 2));
  EXPECT_FALSE(res.found);
  EXPECT_FALSE(res.budget_exhausted);
  EXPECT_GT(res.states_explored, 0u);
  auto ok = bounded_chain_search(arc(), 0, 4, PiecePredicate::mesh_below, q(1, 4));
  ASSERT_TRUE(ok.found);
  ChainWitness w{ChainKind::chain, ok.chain, mesh_of(ok.chain), std::vector<std::size_t>(ok.chain.size(), 0)};
  EXPECT_TRUE(verify_witness(w, OpenSet::full(arc()), {OpenSet::full(arc())}));
  EXPECT_LT(w.mesh, q(1, 4));
}

class ChainProperties : public ::testing::Test {
 protected:
  Rng rng{31337};
};

TEST_F(ChainProperties, EpsilonChainsHaveSmallMesh) {
  for (int i = 0; i < 200; ++i) {
    auto s = random_space(rng, 1);
    auto u = random_open_set(rng, s, 2);
    auto parts = u.connected_components();
    if (parts.empty()) continue;
    auto target = parts.front();
    Rational eps = make_rational(uniform_int(rng, 1, 64), uniform_int(rng, 1, 64));
    if (!decide_chainable(target)) {
      EXPECT_THROW(epsilon_chain(target, eps), NotChainable);
      continue;
    }
    auto w = epsilon_chain(target, eps);
    ASSERT_LT(w.mesh, eps);
    ASSERT_TRUE(verify_witness(w, target, {target}));
  }
}

TEST_F(ChainProperties, RefinementMatchesDecider) {
  for (int i = 0; i < 200; ++i) {
    auto s = random_space(rng, 3);
    auto target = random_open_set(rng, s, 3);
    Cover cover;
    OpenSet acc = OpenSet::empty(s);
    for (int k = 0; k < 3; ++k) {
      cover.push_back(random_open_set(rng, s, 3));
      acc = acc.unite(cover.back());
    }
    cover.push_back(acc.closure().complement().unite(target.intersect(acc.complement().interior())));
    OpenSet total = OpenSet::empty(s);
    for (const auto& c : cover) total = total.unite(c);
    if (!target.subset_of(total)) cover.push_back(target);
    auto w = refine_to_almost_chain(cover, target);
    ASSERT_EQ(w.has_value(), decide_almost_chainable(target));
    if (w) {
      auto defect = witness_defect(*w, target, cover);
      ASSERT_FALSE(defect.has_value()) << *defect;
    }
    if (decide_chainable(target)) { ASSERT_TRUE(decide_almost_chainable(target)); }
  }
}

TEST_F(ChainProperties, LebesgueNumberIsValid) {
  for (int i = 0; i < 100; ++i) {
    auto s = random_space(rng, 2);
    Cover cover;
    OpenSet acc = OpenSet::empty(s);
    for (int k = 0; k < 3; ++k) {
      cover.push_back(random_open_set(rng, s, 2));
      acc = acc.unite(cover.back());
    }
    if (!acc.is_full()) {
      // Patch the uncovered closed set with a neighbourhood of it.
      cover.push_back(thicken(acc.complement(), make_rational(1, 16)));
    }
    auto d = lebesgue_number(cover, s);
    ASSERT_GT(d, 0);
    ASSERT_TRUE(windows_fit(cover, s, d * make_rational(999, 1000), 128));
  }
}
