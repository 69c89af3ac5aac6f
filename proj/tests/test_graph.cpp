#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <random>

#include "semgraph/graph.hpp"
#include "graph_gen.hpp"
#include "test_util.hpp"

using namespace semgraph;
using testutil::catalogOf;
using testutil::fixturePath;
using testutil::L;

namespace {

struct SchoolGraph : ::testing::Test {
  Catalog cat = catalogOf({"school_graph.smg"});
  MeaningGraph g = loadGraph(fixturePath("school_graph.sgraph.json"));
};

Edge spec(const std::string& super, const std::string& sub, SpecStyle st = SpecStyle::Normal) {
  return Edge{EdgeKind::Specialization, super, sub, st};
}
Edge comp(const std::string& p, const std::string& c) { return Edge{EdgeKind::Composition, p, c}; }

}  // namespace

TEST_F(SchoolGraph, ValidatesClean) {
  auto r = validate(g, cat);
  EXPECT_TRUE(r.ok()) << r.text();
  EXPECT_EQ(r.errorCount(), 0u);
}

TEST_F(SchoolGraph, RemovingTeachingNodeBreaksComplement) {
  auto gone = deleteNode(g, cat, "b");
  EXPECT_TRUE(std::find(gone.begin(), gone.end(), "d") != gone.end());
  EXPECT_FALSE(g.hasNode("f"));
  EXPECT_TRUE(g.hasNode("e"));
  auto r = validate(g, cat);
  EXPECT_GE(r.count("complement"), 1u) << r.text();
}

TEST_F(SchoolGraph, JsonRoundTrip) {
  std::string a = toJson(g);
  EXPECT_EQ(fromJson(a), g);
  EXPECT_EQ(toJson(fromJson(a)), a);
  auto dir = std::filesystem::temp_directory_path() / "semgraph_graph_test";
  std::filesystem::create_directories(dir);
  auto p1 = (dir / "one.json").string();
  auto p2 = (dir / "two.json").string();
  saveGraph(g, p1);
  saveGraph(loadGraph(p1), p2);
  EXPECT_EQ(testutil::readFile(p1), testutil::readFile(p2));
  std::filesystem::remove_all(dir);
}

TEST(GraphJson, RejectsUnknownKeys) {
  EXPECT_THROW(fromJson(R"({"nodes":[],"edges":[],"extra":1})"), std::exception);
  EXPECT_THROW(fromJson(R"({"nodes":[{"id":"a","meaning":"#X","colour":"red"}],"edges":[]})"), std::exception);
}

TEST_F(SchoolGraph, DotExport) {
  std::string dot = toDot(g);
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("dir=both"), std::string::npos);
  EXPECT_NE(dot.find("style=dashed"), std::string::npos);
  EXPECT_NE(dot.find("black:invis:black"), std::string::npos);
}

TEST_F(SchoolGraph, AddEdgeChecksLabels) {
  EXPECT_THROW(addEdge(g, cat, comp("a", "b")), GraphError);
  EXPECT_THROW(addEdge(g, cat, comp("a", "missing")), GraphError);
  EXPECT_THROW(addNode(g, cat, "x", L("#Nowhere")), GraphError);
  addNode(g, cat, "e2", L("#School.Teacher"));
  addEdge(g, cat, comp("a", "e2"));
  EXPECT_TRUE(g.hasEdge(comp("a", "e2")));
}

TEST_F(SchoolGraph, SecondRestrictedSubIsRejected) {
  addNode(g, cat, "e2", L("#School.Teacher"));
  addEdge(g, cat, comp("a", "e2"));
  g.insertEdge(spec("d", "e2", SpecStyle::SubRestricted));
  EXPECT_GE(validate(g, cat).count("style-cardinality"), 1u);
}

TEST(GraphValues, ValueNodesAreIdentifiedByValue) {
  Catalog cat = catalogOf({"school_graph.smg"});
  MeaningGraph g;
  auto a = addValueNode(g, cat, L("#String"), "John");
  auto b = addValueNode(g, cat, L("#String"), "John");
  EXPECT_EQ(a, b);
  EXPECT_EQ(g.nodeCount(), 1u);
  EXPECT_EQ(a, valueNodeId(L("#String"), "John"));
}

// Three specialization styles over one super-node.
struct Styles : ::testing::Test {
  Catalog cat = catalogOf({"styles.smg"});
  MeaningGraph g;
  void SetUp() override {
    addNode(g, cat, "club", L("#Club"));
    addNode(g, cat, "r", L("#Role"));
  }
  // `raw` skips the eager checks of addEdge so validate sees the violation.
  void addSubs(const std::string& comp, int n, SpecStyle st, bool raw = false) {
    for (int i = 0; i < n; ++i) {
      std::string id = comp + std::to_string(g.nodeCount());
      addNode(g, cat, id, L("#Club." + comp));
      addEdge(g, cat, ::comp("club", id));
      if (raw) {
        g.insertEdge(spec("r", id, st));
      } else {
        addEdge(g, cat, spec("r", id, st));
      }
    }
  }
};

TEST_F(Styles, NormalAllowsManySubs) {
  addSubs("Plain", 3, SpecStyle::Normal);
  auto r = validate(g, cat);
  EXPECT_TRUE(r.ok()) << r.text();
  deleteNode(g, cat, "Plain2");
  EXPECT_TRUE(g.hasNode("r"));
  EXPECT_TRUE(g.hasNode("Plain3"));
}

TEST_F(Styles, SubRestrictedAllowsOneSub) {
  addSubs("Solo", 1, SpecStyle::SubRestricted);
  EXPECT_TRUE(validate(g, cat).ok()) << validate(g, cat).text();
  EXPECT_THROW(addSubs("Solo", 1, SpecStyle::SubRestricted), GraphError);
  addSubs("Solo", 1, SpecStyle::SubRestricted, true);
  EXPECT_GE(validate(g, cat).count("style-cardinality"), 1u);
}

TEST_F(Styles, SubRestrictedDeleteKeepsSuper) {
  addSubs("Solo", 1, SpecStyle::SubRestricted);
  deleteNode(g, cat, "Solo2");
  EXPECT_TRUE(g.hasNode("r"));
  EXPECT_TRUE(validate(g, cat).ok());
}

TEST_F(Styles, SuperRestrictedAllowsOneSub) {
  addSubs("Bound", 1, SpecStyle::SuperRestricted);
  EXPECT_TRUE(validate(g, cat).ok()) << validate(g, cat).text();
  EXPECT_THROW(addSubs("Bound", 1, SpecStyle::SuperRestricted), GraphError);
  addSubs("Bound", 1, SpecStyle::SuperRestricted, true);
  EXPECT_GE(validate(g, cat).count("style-cardinality"), 1u);
}

TEST_F(Styles, SuperRestrictedDeleteCascades) {
  addSubs("Bound", 1, SpecStyle::SuperRestricted);
  addSubs("Plain", 2, SpecStyle::Normal);
  auto gone = deleteNode(g, cat, "Bound2");
  std::sort(gone.begin(), gone.end());
  EXPECT_EQ(gone, (std::vector<std::string>{"Bound2", "Plain3", "Plain4", "r"}));
  EXPECT_TRUE(g.hasNode("club"));
  EXPECT_TRUE(validate(g, cat).ok()) << validate(g, cat).text();
}

TEST_F(Styles, DeleteMissingNode) {
  EXPECT_THROW(deleteNode(g, cat, "ghost"), GraphError);
  EXPECT_TRUE(deleteNode(g, cat, "ghost", true).empty());
}

TEST(Chase, CreatesThreeNodesPerTeaching) {
  Catalog cat = catalogOf({"school.smg"});
  for (int k : {1, 2, 5}) {
    MeaningGraph g = testutil::schoolWithTeachings(cat, k);
    auto r1 = chase(g, cat);
    EXPECT_EQ(r1.created.size(), static_cast<std::size_t>(3 * k));
    EXPECT_EQ(r1.graph.nodeCount(), g.nodeCount() + 3 * k);
    EXPECT_EQ(r1.graph.withLabel(L("#Teaching")).size(), static_cast<std::size_t>(k));
    auto again = chase(r1.graph, cat);
    EXPECT_TRUE(again.created.empty());
    EXPECT_EQ(toJson(again.graph), toJson(r1.graph));
    EXPECT_EQ(toJson(chase(g, cat).graph), toJson(r1.graph));
    EXPECT_EQ(validate(r1.graph, cat).count("complement"), 0u) << validate(r1.graph, cat).text();
  }
}

TEST(Chase, SchoolGraphIsAlreadySaturated) {
  Catalog cat = catalogOf({"school_graph.smg"});
  MeaningGraph g = loadGraph(fixturePath("school_graph.sgraph.json"));
  EXPECT_TRUE(chase(g, cat).created.empty());
}

struct Nat : ::testing::Test {
  Catalog cat = catalogOf({"nat.smg"});
  MeaningGraph g;
  std::vector<std::string> a, b;
  void SetUp() override {
    a = testutil::addNats(g, cat, 3, "a");
    b = testutil::addNats(g, cat, 3, "b");
  }
};

TEST_F(Nat, EqualDepthIsEquivalent) {
  int trues = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      bool eq = intensiveEq(g, cat, a[i], b[j]);
      EXPECT_EQ(eq, i == j) << a[i] << " " << b[j];
      trues += eq;
    }
  }
  EXPECT_EQ(trues, 4);
  EXPECT_TRUE(validate(g, cat).ok()) << validate(g, cat).text();
}

TEST_F(Nat, MergeLeavesOneChain) {
  mergeAllEquivalent(g, cat);
  EXPECT_EQ(g.withLabel(L("#Nat")).size(), 4u);
  EXPECT_EQ(g.withLabel(L("#Nat.Pred")).size(), 3u);
  EXPECT_EQ(g.nodeCount(), 8u);
  EXPECT_EQ(mergeAllEquivalent(g, cat), 0u);
  EXPECT_TRUE(validate(g, cat).ok()) << validate(g, cat).text();
}

TEST_F(Nat, PairMergeIsIdempotentOnClasses) {
  mergeEquivalent(g, cat, "a2", "b2");
  EXPECT_FALSE(g.hasNode("b2"));
  EXPECT_TRUE(intensiveEq(g, cat, "a3", "b3"));
  EXPECT_FALSE(intensiveEq(g, cat, "a2", "b3"));
}

TEST(Intensive, IsAnEquivalenceRelation) {
  Catalog cat = catalogOf({"nat.smg"});
  std::mt19937 rng(7);
  for (int round = 0; round < 20; ++round) {
    MeaningGraph g;
    std::vector<std::string> ids;
    for (int t = 0; t < 3; ++t) {
      auto v = testutil::addNats(g, cat, static_cast<int>(rng() % 4), "t" + std::to_string(t) + "_");
      ids.insert(ids.end(), v.begin(), v.end());
    }
    for (const auto& x : ids) {
      EXPECT_TRUE(intensiveEq(g, cat, x, x));
      for (const auto& y : ids) {
        EXPECT_EQ(intensiveEq(g, cat, x, y), intensiveEq(g, cat, y, x));
        for (const auto& z : ids) {
          if (intensiveEq(g, cat, x, y) && intensiveEq(g, cat, y, z)) EXPECT_TRUE(intensiveEq(g, cat, x, z));
        }
      }
    }
  }
}
