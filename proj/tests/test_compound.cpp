#include <gtest/gtest.h>

#include "compound_gen.hpp"
#include "semgraph/compound.hpp"
#include "test_util.hpp"

using namespace semgraph;
using testutil::catalogOf;
using testutil::fixture;
using testutil::L;

namespace {

struct Intersection : ::testing::Test {
  Catalog cat = catalogOf({"school_institute.smg"});
  MeaningGraph g;
  void node(const std::string& id, const std::string& l) { addNode(g, cat, id, L(l)); }
  void edge(EdgeKind k, const std::string& a, const std::string& b) { g.insertEdge(Edge{k, a, b}); }
  // 2 Teachers, 3 Researchers; Members shared by (t0, r0) and (t1, r2).
  void SetUp() override {
    node("org", "#Organization");
    node("school", "#School");
    node("inst", "#Institute");
    edge(EdgeKind::Specialization, "org", "school");
    edge(EdgeKind::Specialization, "org", "inst");
    for (int i = 0; i < 2; ++i) {
      node("t" + std::to_string(i), "#School.Teacher");
      edge(EdgeKind::Composition, "school", "t" + std::to_string(i));
    }
    for (int i = 0; i < 3; ++i) {
      node("r" + std::to_string(i), "#Institute.Researcher");
      edge(EdgeKind::Composition, "inst", "r" + std::to_string(i));
    }
  }
  void share(const std::string& m, const std::string& a, const std::string& b) {
    node(m, "#Organization.Member");
    edge(EdgeKind::Composition, "org", m);
    edge(EdgeKind::Specialization, m, a);
    edge(EdgeKind::Specialization, m, b);
  }
  // Brute force over all (teacher, researcher) pairs.
  std::size_t oracle() const {
    std::size_t n = 0;
    for (const auto& t : g.withLabel(L("#School.Teacher"))) {
      for (const auto& r : g.withLabel(L("#Institute.Researcher"))) {
        auto a = g.supers(t);
        auto b = g.supers(r);
        n += std::any_of(a.begin(), a.end(), [&](const auto& s) { return std::count(b.begin(), b.end(), s) > 0; });
      }
    }
    return n;
  }
};

}  // namespace

TEST_F(Intersection, ComponentNodesMatchSharedMembers) {
  share("m0", "t0", "r0");
  share("m1", "t1", "r2");
  auto created = materializeIntersection(g, cat, L("#School&#Institute"));
  EXPECT_EQ(g.withLabel(L("#School&#Institute")).size(), 1u);
  EXPECT_EQ(g.withLabel(L("#School&#Institute.Teacher&Researcher")).size(), oracle());
  EXPECT_EQ(oracle(), 2u);
  EXPECT_EQ(created.size(), 3u);
  auto x = g.withLabel(L("#School&#Institute")).front();
  EXPECT_EQ(g.children(x).size(), 2u + 3u + 2u);
  EXPECT_EQ(validate(g, cat, {true}).count("private-sharing"), 0u) << validate(g, cat, {true}).text();
}

TEST_F(Intersection, NoSharedMembersGivesOnlyInheritedComponents) {
  materializeIntersection(g, cat, L("#School&#Institute"));
  EXPECT_EQ(g.withLabel(L("#School&#Institute")).size(), 1u);
  EXPECT_TRUE(g.withLabel(L("#School&#Institute.Teacher&Researcher")).empty());
}

TEST_F(Intersection, Idempotent) {
  share("m0", "t0", "r0");
  materializeIntersection(g, cat, L("#School&#Institute"));
  std::string once = toJson(g);
  EXPECT_TRUE(materializeIntersection(g, cat, L("#School&#Institute")).empty());
  EXPECT_EQ(toJson(g), once);
}

TEST_F(Intersection, BoundedByComponentPairs) {
  const auto& info = cat.compounds().at(L("#School&#Institute"));
  EXPECT_EQ(info.generated.size(), 3u);
  EXPECT_LE(info.generated.size(), cat.at(L("#School")).components.size() * cat.at(L("#Institute")).components.size());
}

TEST_F(Intersection, UndeclaredCompoundIsRejected) {
  EXPECT_THROW(materializeIntersection(g, cat, L("#Institute&#School")), GraphError);
}

TEST(Join, MatchesNestedLoopOracle) {
  Catalog cat = catalogOf({"gis.smg"});
  MeaningLabel j = L("#School^#GIS_{#School.Site&#GIS.Place}");
  for (unsigned seed = 1; seed <= 20; ++seed) {
    auto f = testutil::randomJoinFixture(cat, seed);
    auto created = materializeJoin(f.graph, cat, j);
    std::set<std::string> got, want;
    for (const auto& id : f.graph.withLabel(j)) got.insert(id);
    for (const auto& [a, b] : f.expected) want.insert("~jn_" + a + "_" + b);
    EXPECT_EQ(got, want) << "seed " << seed;
    EXPECT_EQ(created.size(), 4 * f.expected.size());
    std::string once = toJson(f.graph);
    EXPECT_TRUE(materializeJoin(f.graph, cat, j).empty());
    EXPECT_EQ(toJson(f.graph), once);
  }
}

TEST(Join, RefreshDropsStaleNodes) {
  Catalog cat = catalogOf({"gis.smg"});
  MeaningLabel j = L("#School^#GIS_{#School.Site&#GIS.Place}");
  MeaningGraph g;
  for (const auto& [id, l] : std::vector<std::pair<std::string, std::string>>{
           {"loc", "#Location"}, {"s", "#School"}, {"s.site", "#School.Site"}, {"r", "#GIS"}, {"r.p", "#GIS.Place"}}) {
    addNode(g, cat, id, L(l));
  }
  g.insertEdge({EdgeKind::Composition, "s", "s.site"});
  g.insertEdge({EdgeKind::Composition, "r", "r.p"});
  g.insertEdge({EdgeKind::Specialization, "loc", "s.site"});
  g.insertEdge({EdgeKind::Specialization, "loc", "r.p"});
  materializeJoin(g, cat, j);
  EXPECT_EQ(g.withLabel(j).size(), 1u);
  EXPECT_TRUE(g.hasNode("~jn_s_r.joint"));
  g.removeEdge({EdgeKind::Specialization, "loc", "r.p"});
  materializeJoin(g, cat, j);
  EXPECT_TRUE(g.withLabel(j).empty());
  EXPECT_FALSE(g.hasNode("~jn_s_r.joint"));
  EXPECT_TRUE(g.hasNode("s.site"));
}

TEST(Join, EmptySideGivesNoNodes) {
  Catalog cat = catalogOf({"gis.smg"});
  MeaningGraph g;
  addNode(g, cat, "s", L("#School"));
  EXPECT_TRUE(materializeJoin(g, cat, L("#School^#GIS_{#School.Site&#GIS.Place}")).empty());
}

TEST(Derived, ConditionParsing) {
  auto c = parseDerivedCondition("Age >= 60");
  EXPECT_EQ(c.path, "Age");
  EXPECT_EQ(c.op, DerivedCondition::Op::Ge);
  EXPECT_EQ(c.literal, "60");
  EXPECT_THROW(parseDerivedCondition("Age 60"), ResolutionError);
}

TEST(Derived, DeclaredAsNormalSpecialization) {
  Catalog cat = Catalog::resolve(parseSchema("meaning #Person -> { Name, Age }"));
  Catalog d = declareDerived(cat, DerivedDecl{L("#Senior"), L("#Person"), {parseDerivedCondition("Age >= 60")}});
  EXPECT_TRUE(d.contains(L("#Senior")));
  EXPECT_EQ(d.styleBetween(L("#Senior"), L("#Person")), SpecStyle::Normal);
  EXPECT_THROW(declareDerived(cat, DerivedDecl{L("#Bad"), L("#Person"), {parseDerivedCondition("Height > 2")}}),
               ResolutionError);
}

TEST(Compound, DeclareCompoundRejectsDuplicates) {
  Catalog cat = catalogOf({"gis.smg"});
  EXPECT_THROW(declareCompound(cat, "meaning #School ^ #GIS;"), ResolutionError);
  Catalog c2 = declareCompound(cat, "meaning *#School;");
  EXPECT_TRUE(c2.contains(L("*#School")));
}

namespace {

// One School: President referencing teacher0, 2 Teachers, 3 Students.
MeaningGraph smallSchool(const Catalog& cat) {
  MeaningGraph g;
  addNode(g, cat, "school", L("#School"));
  addNode(g, cat, "president", L("#School.President"));
  g.insertEdge({EdgeKind::Composition, "school", "president"});
  for (int i = 0; i < 2; ++i) {
    addNode(g, cat, "teacher" + std::to_string(i), L("#School.Teacher"));
    g.insertEdge({EdgeKind::Composition, "school", "teacher" + std::to_string(i)});
  }
  for (int i = 0; i < 3; ++i) {
    addNode(g, cat, "student" + std::to_string(i), L("#School.Student"));
    g.insertEdge({EdgeKind::Composition, "school", "student" + std::to_string(i)});
  }
  g.insertEdge({EdgeKind::Reference, "president", "teacher0"});
  return g;
}

const char* kOrgSpecialize =
    "specialize #School <=! #Organization -> { .Teacher <=! .Member; .Student <=! .Member; .President <=! .Head }";

}  // namespace

TEST(Specialize, MigratesSchoolGraph) {
  Catalog cat = Catalog::resolve(parseSchema(fixture("school_graph.smg") +
                                             "\nmeaning #Organization -> { Member[*], Head } with { .Head --> .Member }"));
  MeaningGraph g = smallSchool(cat);
  auto res = applySpecialize(cat, g, kOrgSpecialize);
  const MeaningGraph& h = res.graph;
  EXPECT_EQ(h.withLabel(L("#Organization")).size(), 1u);
  EXPECT_EQ(h.withLabel(L("#Organization.Member")).size(), 5u);
  auto heads = h.withLabel(L("#Organization.Head"));
  ASSERT_EQ(heads.size(), 1u);
  auto target = h.host(heads[0]);
  ASSERT_TRUE(target);
  auto subs = h.subs(*target);
  EXPECT_EQ(subs, std::vector<std::string>{"teacher0"});
  std::string sp = "~sp_" + std::to_string(res.statement) + "_";
  EXPECT_TRUE(h.hasNode(sp + "school"));
  EXPECT_TRUE(h.hasNode(sp + "president"));
  EXPECT_EQ(res.created.size(), 7u);

  auto again = applySpecialize(res.catalog, h, kOrgSpecialize);
  EXPECT_TRUE(again.created.empty());
  EXPECT_EQ(again.statement, res.statement);
  EXPECT_EQ(toJson(again.graph), toJson(h));
}

TEST(Specialize, EmptyGraphOnlyUpdatesCatalog) {
  Catalog base = catalogOf({"school_graph.smg"});
  Catalog withOrg = Catalog::resolve(parseSchema(fixture("school_graph.smg") +
                                                 "\nmeaning #Organization -> { Member[*], Head } with { .Head --> .Member }"));
  auto res = applySpecialize(withOrg, MeaningGraph{}, kOrgSpecialize);
  EXPECT_EQ(res.graph.nodeCount(), 0u);
  EXPECT_TRUE(res.catalog.isSubMeaning(L("#School"), L("#Organization")));
  EXPECT_FALSE(base.contains(L("#Organization")));
}

TEST(Specialize, InconsistentStatementIsRejected) {
  Catalog cat = catalogOf({"school_graph.smg", "choice.smg"});
  MeaningGraph g = smallSchool(cat);
  std::string before = toJson(g);
  std::string dump = cat.dump();
  try {
    applySpecialize(cat, g, "specialize #School <= #Choice -> { .Teacher <= .A; .Student <= .B }");
    ADD_FAILURE() << "statement accepted";
  } catch (const SpecializeRejected& e) {
    EXPECT_NE(std::string(e.what()).find("not occurrence consistent"), std::string::npos) << e.what();
  }
  EXPECT_EQ(toJson(g), before);
  EXPECT_EQ(cat.dump(), dump);
}
