#pragma once

#include <string>
#include <vector>

#include "semgraph/graph.hpp"

namespace testutil {

// A School with k Teaching instances and no #Teaching nodes.
inline semgraph::MeaningGraph schoolWithTeachings(const semgraph::Catalog& cat, int k) {
  using namespace semgraph;
  MeaningGraph g;
  auto node = [&](const std::string& id, const std::string& l) { addNode(g, cat, id, MeaningLabel::parse(l)); };
  auto edge = [&](EdgeKind kind, const std::string& a, const std::string& b) { addEdge(g, cat, Edge{kind, a, b}); };
  node("school", "#School");
  node("course", "#School.Course");
  node("president", "#School.President");
  edge(EdgeKind::Composition, "school", "course");
  edge(EdgeKind::Composition, "school", "president");
  for (int i = 0; i < k; ++i) {
    std::string n = std::to_string(i);
    node("teacher" + n, "#School.Teacher");
    node("student" + n, "#School.Student");
    node("teaching" + n, "#School.Teaching");
    node("teaching" + n + ".teacher", "#School.Teaching.Teacher");
    node("teaching" + n + ".student", "#School.Teaching.Student");
    node("teaching" + n + ".course", "#School.Teaching.Course");
    edge(EdgeKind::Composition, "school", "teacher" + n);
    edge(EdgeKind::Composition, "school", "student" + n);
    edge(EdgeKind::Composition, "school", "teaching" + n);
    for (const char* c : {".teacher", ".student", ".course"}) {
      edge(EdgeKind::Composition, "teaching" + n, "teaching" + n + c);
    }
    edge(EdgeKind::Equivalence, "teacher" + n, "teaching" + n + ".teacher");
    edge(EdgeKind::Equivalence, "course", "teaching" + n + ".course");
    edge(EdgeKind::Specialization, "student" + n, "teaching" + n + ".student");
  }
  return g;
}

// Numbers 0..top built as #Nat nodes with Pred chains ending in the shared static Zero.
// Returns the ids of the #Nat nodes in depth order.
inline std::vector<std::string> addNats(semgraph::MeaningGraph& g, const semgraph::Catalog& cat, int top,
                                        const std::string& tag, const std::string& zero = "zero") {
  using namespace semgraph;
  if (!g.hasNode(zero)) addNode(g, cat, zero, MeaningLabel::parse("#Nat.Zero"));
  std::vector<std::string> out;
  for (int d = 0; d <= top; ++d) {
    std::string id = tag + std::to_string(d);
    addNode(g, cat, id, MeaningLabel::parse("#Nat"));
    std::string cur = id;
    for (int j = 0; j < d; ++j) {
      std::string p = id + ".p" + std::to_string(j);
      addNode(g, cat, p, MeaningLabel::parse("#Nat.Pred"));
      addEdge(g, cat, Edge{EdgeKind::Composition, cur, p});
      cur = p;
    }
    addEdge(g, cat, Edge{EdgeKind::Composition, cur, zero});
    out.push_back(id);
  }
  return out;
}

}  // namespace testutil
