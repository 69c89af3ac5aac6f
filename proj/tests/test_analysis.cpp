#include <gtest/gtest.h>

#include "occ_gen.hpp"
#include "test_util.hpp"

using namespace semgraph;
using testutil::L;

namespace {

LabelOcc occOf(const std::string& body) {
  auto s = parseSchema("meaning #T -> {" + body + "}");
  return toLabelOcc(*s.declarations[0].body);
}

std::vector<LabelSet> allSubsets(const std::vector<std::string>& names) {
  std::vector<LabelSet> out;
  for (unsigned m = 0; m < (1u << names.size()); ++m) {
    LabelSet s;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (m & (1u << i)) s.insert(names[i]);
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST(Occurrence, GradeOrScore) {
  auto e = occOf("(Grade | Score)?");
  EXPECT_EQ(occEnumerate(e), (OccurrenceSet{{}, {"Grade"}, {"Score"}}));
  EXPECT_TRUE(occMember(e, {}));
  EXPECT_TRUE(occMember(e, {"Grade"}));
  EXPECT_FALSE(occMember(e, {"Grade", "Score"}));
  EXPECT_FALSE(occMember(e, {"Other"}));
}

TEST(Occurrence, TrivialCases) {
  EXPECT_TRUE(occMember(LabelOcc::empty(), {}));
  EXPECT_EQ(occEnumerate(LabelOcc::makeLeaf("A")), (OccurrenceSet{{"A"}}));
}

TEST(Occurrence, SchoolBodyHasOneOccurrence) {
  auto cat = testutil::catalogOf({"school.smg"});
  auto occs = occEnumerate(cat.at(L("#School")).occurrence);
  ASSERT_EQ(occs.size(), 1u);
  EXPECT_EQ(*occs.begin(), (LabelSet{"Teacher", "Student", "Course", "President", "Teaching"}));
}

TEST(Occurrence, EnumerationBound) {
  std::string body;
  for (int i = 0; i < 17; ++i) body += (i ? ", A" : "A") + std::to_string(i);
  EXPECT_THROW(occEnumerate(occOf(body)), Error);
  EXPECT_NO_THROW(occEnumerate(occOf(body), 17));
}

TEST(Occurrence, Extendable) {
  auto e = occOf("A, (B | C), D?");
  EXPECT_TRUE(occExtendable(e, {"A", "B"}));
  EXPECT_TRUE(occExtendable(e, {}));
  EXPECT_FALSE(occExtendable(e, {"B", "C"}));
}

TEST(OccurrenceProperty, MemberAgreesWithOracleOnAllSubsets) {
  std::vector<std::string> names{"a", "b", "c", "d", "e", "f"};
  int disagreements = 0;
  for (unsigned seed = 0; seed < 1000; ++seed) {
    testutil::OccGen gen(seed);
    LabelOcc e = gen.expr(names, 6);
    auto truth = testutil::oracleDenote(e);
    EXPECT_EQ(occEnumerate(e), truth) << printLabelOcc(e);
    for (const auto& s : allSubsets(names)) {
      bool want = truth.count(s) > 0;
      if (occMember(e, s) != want) ++disagreements;
      bool ext = std::any_of(truth.begin(), truth.end(),
                             [&](const LabelSet& o) { return std::includes(o.begin(), o.end(), s.begin(), s.end()); });
      if (occExtendable(e, s) != ext) ++disagreements;
    }
  }
  EXPECT_EQ(disagreements, 0);
}

TEST(OccurrenceProperty, DuplicateLeavesUseSetUnion) {
  // Image expressions may repeat a label; Conj still means union.
  LabelOcc e = LabelOcc::makeConj(LabelOcc::makeOptional(LabelOcc::makeLeaf("C")), LabelOcc::makeLeaf("C"));
  EXPECT_TRUE(occMember(e, {"C"}));
  EXPECT_FALSE(occMember(e, {}));
}

TEST(Consistency, TeachingAgainstTeaching) {
  auto cat = testutil::catalogOf({"school.smg"});
  auto r = checkOccConsistency(L("#School.Teaching"), L("#Teaching"), cat);
  EXPECT_EQ(r.verdict, Verdict::Consistent);
  EXPECT_EQ(r.engine, ConsistencyEngine::Structural);
}

TEST(Consistency, IdentityIsConsistent) {
  auto cat = testutil::catalogOf({"school.smg"});
  auto r = checkOccConsistency(L("#School"), L("#School"), cat);
  EXPECT_EQ(r.verdict, Verdict::Consistent);
}

TEST(Consistency, DisjunctionIntoMandatoryPair) {
  auto sub = occOf("A | B");
  auto super = occOf("C, D");
  std::map<std::string, std::string> map{{"A", "C"}, {"B", "C"}};
  for (auto engine : {ConsistencyEngine::Structural, ConsistencyEngine::Enumerate}) {
    auto r = checkOccConsistency(sub, super, map, engine);
    EXPECT_EQ(r.verdict, Verdict::Inconsistent) << to_string(engine);
    ASSERT_TRUE(r.counterexample);
    EXPECT_EQ(*r.counterexample, LabelSet{"A"});
  }
}

TEST(Consistency, UndeterminedAtBound) {
  std::string body;
  std::map<std::string, std::string> map;
  for (int i = 0; i < 18; ++i) {
    body += (i ? " | A" : "A") + std::to_string(i);
  }
  auto r = checkOccConsistency(occOf(body), occOf("X"), map, ConsistencyEngine::Enumerate, 16);
  EXPECT_EQ(r.verdict, Verdict::Undetermined);
  EXPECT_EQ(r.detail, "undetermined at bound 16");
}

TEST(Consistency, NatPredAgainstNat) {
  auto cat = testutil::catalogOf({"nat.smg"});
  EXPECT_EQ(checkOccConsistency(L("#Nat.Pred"), L("#Nat"), cat).verdict, Verdict::Consistent);
}

TEST(Consistency, OrganizationStatement) {
  auto cat = testutil::catalogOf({"school.smg", "organization.smg"});
  EXPECT_EQ(checkOccConsistency(L("#School"), L("#Organization"), cat).verdict, Verdict::Consistent);
}

TEST(ConsistencyProperty, OptionalWrapperMonotone) {
  // Adding '?' to a sub component keeps a consistent pair consistent when the
  // super component is optional too.
  std::map<std::string, std::string> map{{"A", "X"}, {"B", "Y"}};
  auto before = checkOccConsistency(occOf("A, B"), occOf("X?, Y"), map, ConsistencyEngine::Enumerate);
  auto after = checkOccConsistency(occOf("A?, B"), occOf("X?, Y"), map, ConsistencyEngine::Enumerate);
  EXPECT_EQ(before.verdict, Verdict::Consistent);
  EXPECT_EQ(after.verdict, Verdict::Consistent);
}

TEST(Obligations, SchoolTeachingPair) {
  auto cat = testutil::catalogOf({"school.smg"});
  auto obs = computeObligations(cat, L("#School"));
  ASSERT_EQ(obs.size(), 1u);
  EXPECT_EQ(obs[0].context, L("#School.Teaching"));
  EXPECT_EQ(obs[0].target, L("#Teaching"));
  EXPECT_EQ(obs[0].occurrence, (LabelSet{"Student", "Teacher"}));
  EXPECT_EQ(obs[0].contextComponent.at("Student"), L("#School.Teaching.Student"));
  EXPECT_EQ(coveringRule(cat, obs[0]), std::optional<std::size_t>(0));
}

TEST(Obligations, UncoveredWithoutComplement) {
  auto cat = testutil::catalogOf({"school_no_complement.smg"});
  auto obs = computeObligations(cat, L("#School"));
  ASSERT_EQ(obs.size(), 1u);
  EXPECT_FALSE(coveringRule(cat, obs[0]));
}

TEST(Obligations, NoneWithoutComponentSpecialization) {
  auto cat = testutil::catalogOf({"nat.smg"});
  EXPECT_TRUE(computeAllObligations(cat).empty());
}
