#include <gtest/gtest.h>

#include "semgraph/completeness.hpp"
#include "test_util.hpp"

using namespace semgraph;
using testutil::catalogOf;
using testutil::L;

TEST(Completeness, ComplementMakesSchoolComplete) {
  Catalog cat = catalogOf({"school.smg"});
  auto rep = checkCompleteness(cat, L("#School"));
  ASSERT_FALSE(rep.obligations.empty());
  EXPECT_EQ(rep.verdict, Completeness::Complete) << rep.text();
  EXPECT_FALSE(rep.witness);
  for (const auto& r : rep.obligations) EXPECT_TRUE(r.rule.has_value());
}

TEST(Completeness, MissingComplementYieldsWitness) {
  Catalog cat = catalogOf({"school_no_complement.smg"});
  auto rep = checkCompleteness(cat, L("#School"));
  EXPECT_EQ(rep.verdict, Completeness::Incomplete) << rep.text();
  ASSERT_TRUE(rep.witness);
  EXPECT_LE(rep.witness->nodeCount(), rep.bound);
  auto v = validate(*rep.witness, cat);
  EXPECT_GE(v.count("dangling-component-specialization"), 1u) << v.text();
}

TEST(Completeness, TinyBoundIsUndetermined) {
  Catalog cat = catalogOf({"school_no_complement.smg"});
  auto rep = checkCompleteness(cat, L("#School"), 2);
  EXPECT_EQ(rep.verdict, Completeness::Undetermined) << rep.text();
  EXPECT_FALSE(rep.witness);
}

TEST(Completeness, NoObligationsIsComplete) {
  Catalog cat = catalogOf({"nat.smg"});
  auto rep = checkCompleteness(cat, L("#Nat"));
  EXPECT_TRUE(rep.obligations.empty());
  EXPECT_EQ(rep.verdict, Completeness::Complete);
  EXPECT_TRUE(checkAllCompleteness(cat).empty());
}
