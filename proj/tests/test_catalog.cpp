#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace semgraph;
using testutil::L;

TEST(Catalog, SchoolMeaningsAndComponents) {
  auto cat = testutil::catalogOf({"school.smg"});
  const auto& school = cat.at(L("#School"));
  ASSERT_EQ(school.components.size(), 5u);
  EXPECT_EQ(school.component("President")->setOf, false);
  EXPECT_EQ(school.component("Teacher")->setOf, true);
  EXPECT_EQ(school.component("Teacher")->scope, Scope::Private);
  EXPECT_TRUE(cat.contains(L("#School.Teaching.Student.Grade")));
  EXPECT_EQ(printLabelOcc(cat.at(L("#School.Teaching.Student")).occurrence), "(Grade | Score)?");
  EXPECT_TRUE(cat.contains(L("#String")));
}

TEST(Catalog, SchoolSpecializationsAndEquivalences) {
  auto cat = testutil::catalogOf({"school.smg"});
  EXPECT_TRUE(cat.isSubMeaning(L("#School.Teacher"), L("#Teaching.Teacher")));
  EXPECT_EQ(cat.styleBetween(L("#School.Teacher"), L("#Teaching.Teacher")), SpecStyle::SubRestricted);
  EXPECT_TRUE(cat.equivalent(L("#School.Teaching.Teacher"), L("#School.Teacher")));
  EXPECT_TRUE(cat.equivalent(L("#School.Teaching.Course"), L("#School.Course")));
  // Equivalent meanings inherit sub-meaning relations.
  EXPECT_TRUE(cat.isSubMeaning(L("#School.Teaching.Teacher"), L("#Teaching.Teacher")));
  EXPECT_TRUE(cat.isSubMeaning(L("#School.Teaching.Student"), L("#Teaching.Student")));
  EXPECT_FALSE(cat.isSubMeaning(L("#Teaching.Teacher"), L("#School.Teacher")));
  EXPECT_FALSE(cat.isSubMeaning(L("#School.Teacher"), L("#School.Teacher")));
}

TEST(Catalog, ComplementResolved) {
  auto cat = testutil::catalogOf({"school.smg"});
  ASSERT_EQ(cat.complements().size(), 1u);
  const auto& rule = cat.complements()[0];
  EXPECT_EQ(rule.owner, L("#School.Teaching"));
  EXPECT_EQ(rule.head[0].label, L("#Teaching"));
  EXPECT_EQ(rule.head[0].children[0].label, L("#Teaching.Teacher"));
  EXPECT_EQ(rule.body[0].label, L("#School.Teaching"));
  EXPECT_EQ(rule.body[0].children[1].label, L("#School.Teaching.Student"));
}

TEST(Catalog, ComponentSpecializationsOfSchool) {
  auto cat = testutil::catalogOf({"school.smg"});
  auto cs = cat.componentSpecializations(L("#School"));
  std::vector<std::pair<MeaningLabel, MeaningLabel>> want{
      {L("#School.Student"), L("#Teaching.Student")},
      {L("#School.Teacher"), L("#Teaching.Teacher")},
      {L("#School.Teaching.Student"), L("#School.Student")},
  };
  EXPECT_EQ(cs, want);
}

TEST(Catalog, NatRecursiveInheritance) {
  auto cat = testutil::catalogOf({"nat.smg"});
  const auto& pred = cat.at(L("#Nat.Pred"));
  EXPECT_TRUE(cat.isSubMeaning(L("#Nat.Pred"), L("#Nat")));
  EXPECT_EQ(cat.styleBetween(L("#Nat.Pred"), L("#Nat")), SpecStyle::SubRestricted);
  ASSERT_NE(pred.component("Zero"), nullptr);
  ASSERT_NE(pred.component("Pred"), nullptr);
  EXPECT_EQ(pred.component("Zero")->label, L("#Nat.Zero"));
  EXPECT_EQ(pred.component("Pred")->label, L("#Nat.Pred"));
  EXPECT_EQ(pred.component("Zero")->scope, Scope::Static);
  EXPECT_EQ(printLabelOcc(pred.occurrence), "Zero | Pred");
  EXPECT_TRUE(cat.isStructural(L("#Nat.Pred")));
  EXPECT_FALSE(cat.contains(L("#Nat.Pred.Pred")));
}

TEST(Catalog, OrganizationGeneralization) {
  auto cat = testutil::catalogOf({"school.smg", "organization.smg"});
  EXPECT_EQ(cat.styleBetween(L("#School"), L("#Organization")), SpecStyle::SuperRestricted);
  EXPECT_EQ(cat.styleBetween(L("#School.Teacher"), L("#Organization.Member")), SpecStyle::SuperRestricted);
  // Member and Head are covered; nothing is inherited into School.
  EXPECT_EQ(cat.at(L("#School")).components.size(), 5u);
  auto map = cat.componentMap(L("#School"), L("#Organization"));
  EXPECT_EQ(map.at(L("#School.Teacher")), L("#Organization.Member"));
  EXPECT_EQ(map.at(L("#School.President")), L("#Organization.Head"));
  EXPECT_EQ(map.count(L("#School.Course")), 0u);
  const auto* ref = cat.referenceOf(L("#Organization.Head"));
  ASSERT_NE(ref, nullptr);
  EXPECT_EQ(ref->host, L("#Organization.Member"));
  ASSERT_TRUE(ref->scope);
  EXPECT_EQ(*ref->scope, L("#Organization"));
  EXPECT_TRUE(cat.isSubMeaning(L("#Organization.Head"), L("@#Organization.Member")));
}

TEST(Catalog, InheritanceCopiesComponents) {
  auto cat = Catalog::resolve(parseSchema(
      "meaning #Person -> { Name, Age? }\n"
      "meaning #Student -> { School } with { #Student <= #Person }\n"));
  const auto& st = cat.at(L("#Student"));
  ASSERT_NE(st.component("Name"), nullptr);
  EXPECT_TRUE(st.component("Name")->inherited);
  EXPECT_EQ(st.component("Name")->label, L("#Student.Name"));
  EXPECT_TRUE(cat.equivalent(L("#Student.Name"), L("#Person.Name")));
  EXPECT_EQ(printLabelOcc(st.occurrence), "Name, Age?, School");
  auto map = cat.componentMap(L("#Student"), L("#Person"));
  EXPECT_EQ(map.at(L("#Student.Age")), L("#Person.Age"));
}

TEST(Catalog, OverrideByName) {
  auto cat = Catalog::resolve(parseSchema(
      "meaning #School -> { Teacher[*], President }\n"
      "meaning #University -> { Teacher[*] -> { Title }, Professor[*] } with {\n"
      "  #University <= #School; Teacher <= #School.Teacher; Professor <= .Teacher }\n"));
  const auto& u = cat.at(L("#University"));
  EXPECT_EQ(u.overrides, std::vector<std::string>{"Teacher"});
  EXPECT_TRUE(u.component("President")->inherited);
  EXPECT_FALSE(u.component("Teacher")->inherited);
  EXPECT_EQ(cat.componentMap(L("#University"), L("#School")).at(L("#University.Teacher")), L("#School.Teacher"));
}

TEST(Catalog, IntersectionComponents) {
  auto cat = testutil::catalogOf({"school_institute.smg"});
  MeaningLabel i = L("#School&#Institute");
  ASSERT_TRUE(cat.contains(i));
  EXPECT_TRUE(cat.isSubMeaning(i, L("#School")));
  EXPECT_TRUE(cat.isSubMeaning(i, L("#Institute")));
  const auto& m = cat.at(i);
  ASSERT_NE(m.component("Teacher&Researcher"), nullptr);
  ASSERT_NE(m.component("Student&Researcher"), nullptr);
  ASSERT_NE(m.component("President&Director"), nullptr);
  EXPECT_EQ(m.component("Teacher&Director"), nullptr);
  EXPECT_TRUE(m.component("Teacher")->inherited);
  EXPECT_TRUE(cat.isSubMeaning(i.child("Teacher&Researcher"), L("#Institute.Researcher")));
  EXPECT_EQ(*cat.compounds().at(i).ancestor, L("#Organization"));
}

TEST(Catalog, IntersectionNeedsCommonAncestor) {
  EXPECT_THROW(Catalog::resolve(parseSchema("meaning #A -> {X} meaning #B -> {Y} meaning #A & #B;")),
               ResolutionError);
}

TEST(Catalog, ProductGroupUnionJoin) {
  auto cat = testutil::catalogOf({"gis.smg"});
  MeaningLabel p = L("#School^#GIS");
  EXPECT_TRUE(cat.isSubMeaning(p.child("School"), L("#School")));
  EXPECT_TRUE(cat.isSubMeaning(p.child("GIS"), L("#GIS")));
  MeaningLabel j = L("#School^#GIS_{#School.Site&#GIS.Place}");
  ASSERT_TRUE(cat.contains(j));
  EXPECT_TRUE(cat.isSubMeaning(j, p));
  EXPECT_TRUE(cat.isSubMeaning(j.child("joint"), L("#School.Site")));
  EXPECT_TRUE(cat.isSubMeaning(j.child("joint"), L("#GIS.Place")));

  auto g = Catalog::resolve(parseSchema("meaning #A -> {X} meaning #B meaning *#A; meaning #A || #B;"));
  EXPECT_TRUE(g.at(L("*#A")).component("A")->setOf);
  EXPECT_TRUE(g.isSubMeaning(L("#A"), L("#A||#B")));
}

TEST(Catalog, JoinRequiresDeclaredProduct) {
  EXPECT_THROW(Catalog::resolve(parseSchema("meaning #L -> {N} meaning #A -> {X <= #L} meaning #B -> {Y <= #L}\n"
                                            "meaning #A ^ #B join (#A.X & #B.Y);")),
               ResolutionError);
}

TEST(Catalog, ResolutionErrors) {
  EXPECT_THROW(Catalog::resolve(parseSchema("meaning #A -> {X} with { X <= #Missing }")), ResolutionError);
  EXPECT_THROW(Catalog::resolve(parseSchema("meaning #A meaning #A")), ResolutionError);
  EXPECT_THROW(Catalog::resolve(parseSchema("meaning #A with { #A <= #B } meaning #B with { #B <= #A }")),
               ResolutionError);
  EXPECT_THROW(Catalog::resolve(parseSchema("meaning #A -> {X} with { Y <=> X }")), ResolutionError);
}

TEST(Catalog, HierarchicalEquivalence) {
  auto cat = Catalog::resolve(parseSchema("meaning #A -> {X -> {N}} meaning #B -> {X -> {N}} with { #A <=> #B }"));
  EXPECT_TRUE(cat.equivalent(L("#A.X"), L("#B.X")));
  EXPECT_TRUE(cat.equivalent(L("#A.X.N"), L("#B.X.N")));
}

TEST(Catalog, DumpIsSortedAndDeterministic) {
  auto a = testutil::catalogOf({"school.smg", "organization.smg"}).dump();
  auto b = testutil::catalogOf({"school.smg", "organization.smg"}).dump();
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("spec\t#School.Teacher\t!<=\t#Teaching.Teacher\tdeclared"), std::string::npos);
}
