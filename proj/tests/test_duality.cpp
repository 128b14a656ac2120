#include <gtest/gtest.h>

#include "cuntzkit/duality.hpp"
#include "cuntzkit/random.hpp"

using namespace cuntzkit;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

SpacePtr arc() {
  static SpacePtr s = make_space(Space::unit_arc());
  return s;
}
LscElement ind(Rational a, Rational b, bool l = false, bool r = false) {
  return LscElement::indicator(OpenSet::interval(arc(), 0, a, b, l, r));
}

}  // namespace

TEST(BasicTop, HalfOpenPair) {
  auto y = ind(0, q(1, 2), true, false);
  auto z = ind(q(1, 4), 1, false, true);
  auto r = verify_basictop(y, z);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_TRUE(r.holds[i]) << BasicTopReport::names[i];
  // cl([0,1/2)) = [0,1/2] = X \ (1/2,1], and y\1 = χ(1/2,1].
  EXPECT_EQ(complement_in_unit(y), ind(q(1, 2), 1, false, true));
  EXPECT_EQ(y.support().closure(), ind(q(1, 2), 1, false, true).support().complement());
}

TEST(BasicTop, ZeroAndUnit) {
  auto zero = LscElement::zero(arc());
  auto e = LscElement::unit(arc());
  EXPECT_EQ(complement_in_unit(zero), e);
  EXPECT_EQ(complement_in_unit(e), zero);
  EXPECT_TRUE(DualPair(zero).c.is_full());
  EXPECT_TRUE(DualPair(e).c.empty());
  EXPECT_TRUE(verify_basictop(zero, e).all());
  EXPECT_TRUE(verify_basictop(e, zero).all());
  EXPECT_TRUE(verify_basictop(e, e).all());
  EXPECT_THROW(verify_basictop(scalar_mul(2, e), e), PreconditionViolated);
}

TEST(HausdorffWayBelow, Examples) {
  EXPECT_TRUE(verify_hausdorff_wayb(ind(q(1, 4), q(1, 2)), ind(0, q(3, 4))));
  EXPECT_TRUE(way_below(ind(q(1, 4), q(1, 2)), ind(0, q(3, 4))));
  EXPECT_TRUE(verify_hausdorff_wayb(ind(0, q(1, 2)), ind(0, q(1, 2))));
  EXPECT_FALSE(way_below(ind(0, q(1, 2)), ind(0, q(1, 2))));
  EXPECT_TRUE(verify_hausdorff_wayb(LscElement::zero(arc()), ind(0, q(1, 2))));
  EXPECT_TRUE(way_below(LscElement::zero(arc()), ind(0, q(1, 2))));
}

TEST(TopologyLaws, Examples) {
  EXPECT_TRUE(verify_topology_laws({ind(0, q(1, 2)), ind(q(1, 4), q(3, 4))}, arc()));
  EXPECT_TRUE(verify_topology_laws({}, arc()));
  EXPECT_TRUE(verify_topology_laws({LscElement::unit(arc())}, arc()));
  EXPECT_TRUE(DualPair(LscElement::unit(arc())).c.empty());
}

TEST(DualityProperties, RandomIndicatorPairs) {
  Rng rng(2024);
  int wb_true = 0;
  for (int i = 0; i < 1000; ++i) {
    auto sp = random_space(rng, 4);
    auto y = random_indicator(rng, sp, 6);
    auto z = coin(rng, 30) ? LscElement::indicator(thicken(y.support().closure(), make_rational(1, 16)))
                           : random_indicator(rng, sp, 6);
    auto r = verify_basictop(y, z);
    for (std::size_t k = 0; k < 6; ++k) ASSERT_TRUE(r.holds[k]) << BasicTopReport::names[k] << " case " << i;
    ASSERT_TRUE(verify_hausdorff_wayb(y, z)) << i;
    wb_true += way_below(y, z);
  }
  EXPECT_GT(wb_true, 50);
}

TEST(DualityProperties, TopologyLawsAndRoundTrip) {
  Rng rng(77);
  for (int i = 0; i < 200; ++i) {
    auto sp = random_space(rng, 3);
    std::vector<LscElement> fam;
    long n = uniform_int(rng, 0, 4);
    for (long k = 0; k < n; ++k) fam.push_back(random_indicator(rng, sp, 4));
    ASSERT_TRUE(verify_topology_laws(fam, sp, 12)) << i;
    auto u = random_open_set(rng, sp, 6);
    ASSERT_TRUE(round_trip(u));
  }
}
