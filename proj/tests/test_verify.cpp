#include <gtest/gtest.h>

#include "cuntzkit/io.hpp"
#include "cuntzkit/verify.hpp"

using namespace cuntzkit;

TEST(LemmaSuite, IdsAreSortedAndUnique) {
  auto ids = verify::lemma_ids();
  EXPECT_TRUE(std::is_sorted(ids.begin(), ids.end()));
  EXPECT_EQ(std::adjacent_find(ids.begin(), ids.end()), ids.end());
  EXPECT_GE(ids.size(), 20u);
}

TEST(LemmaSuite, HundredCasesPass) {
  auto r = verify::verify_lemmas(42, 100);
  for (const auto& l : r.lemmas) {
    EXPECT_EQ(l.failures, 0u) << l.id << ": " << (l.failed.empty() ? "" : l.failed.front().detail);
    EXPECT_GT(l.cases, 0u) << l.id;
  }
  EXPECT_TRUE(r.ok());
}

TEST(LemmaSuite, BothSidesOfEquivalencesAreExercised) {
  auto r = verify::verify_lemmas(7, 200);
  for (const char* id : {"way-below-oracle", "termwise-way-below", "topological-order", "cancellation", "comparability-below-unit",
                         "closure-way-below", "sum-join", "weak-chainability", "direct-sum-weak-chainability"}) {
    const auto* l = r.find(id);
    ASSERT_NE(l, nullptr) << id;
    EXPECT_GT(l->positive_cases, 10u) << id;
    EXPECT_LT(l->positive_cases, l->cases - 10) << id;
  }
}

TEST(LemmaSuite, ReportsAreDeterministic) {
  auto a = io::to_json(verify::verify_lemmas(42, 20)).dump();
  auto b = io::to_json(verify::verify_lemmas(42, 20)).dump();
  EXPECT_EQ(a, b);
  auto c = io::to_json(verify::verify_lemmas(43, 20)).dump();
  EXPECT_NE(a, c);
}

TEST(LemmaSuite, MutationCanaryIsCaught) {
  auto r = verify::verify_lemmas(42, 50, verify::Mutation::add_off_by_one);
  const auto* l = r.find("ordered-sum-identity");
  ASSERT_NE(l, nullptr);
  EXPECT_GT(l->failures, 0u);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(io::to_json(r)["status"], "fail");
}

TEST(LemmaSuite, FilterAndUnknownIds) {
  auto r = verify::verify_lemmas(1, 10, verify::Mutation::none, {"heyting-law"});
  ASSERT_EQ(r.lemmas.size(), 1u);
  EXPECT_EQ(r.lemmas[0].cases, 10u);
  EXPECT_THROW(verify::verify_lemmas(1, 10, verify::Mutation::none, {"no-such-lemma"}), MalformedInput);
  EXPECT_EQ(verify::parse_mutation("add-off-by-one"), verify::Mutation::add_off_by_one);
  EXPECT_FALSE(verify::parse_mutation("bogus").has_value());
}
