#pragma once

#include <random>
#include <set>
#include <string>
#include <utility>

#include "semgraph/graph.hpp"

namespace testutil {

// Schools with one Site and GIS records with Places, each attached to a random Location.
struct JoinFixture {
  semgraph::MeaningGraph graph;
  std::set<std::pair<std::string, std::string>> expected;  // nested-loop oracle
};

inline JoinFixture randomJoinFixture(const semgraph::Catalog& cat, unsigned seed) {
  using namespace semgraph;
  std::mt19937 rng(seed);
  JoinFixture f;
  MeaningGraph& g = f.graph;
  auto node = [&](const std::string& id, const char* l) { addNode(g, cat, id, MeaningLabel::parse(l)); };
  auto edge = [&](EdgeKind k, const std::string& a, const std::string& b) { g.insertEdge(Edge{k, a, b}); };
  int locs = 1 + static_cast<int>(rng() % 4);
  for (int i = 0; i < locs; ++i) node("loc" + std::to_string(i), "#Location");
  int schools = static_cast<int>(rng() % 7);
  int records = static_cast<int>(rng() % 5);
  std::map<std::string, int> siteLoc;
  std::map<std::string, std::set<int>> placeLocs;
  for (int i = 0; i < schools; ++i) {
    std::string s = "school" + std::to_string(i);
    node(s, "#School");
    node(s + ".site", "#School.Site");
    edge(EdgeKind::Composition, s, s + ".site");
    int l = static_cast<int>(rng() % (locs + 1));
    siteLoc[s] = l;
    if (l < locs) edge(EdgeKind::Specialization, "loc" + std::to_string(l), s + ".site");
  }
  for (int i = 0; i < records; ++i) {
    std::string r = "gis" + std::to_string(i);
    node(r, "#GIS");
    int places = static_cast<int>(rng() % 4);
    for (int p = 0; p < places; ++p) {
      std::string id = r + ".place" + std::to_string(p);
      node(id, "#GIS.Place");
      edge(EdgeKind::Composition, r, id);
      int l = static_cast<int>(rng() % (locs + 1));
      if (l < locs) {
        edge(EdgeKind::Specialization, "loc" + std::to_string(l), id);
        placeLocs[r].insert(l);
      }
    }
  }
  for (const auto& [s, l] : siteLoc) {
    for (const auto& [r, ls] : placeLocs) {
      if (ls.count(l)) f.expected.emplace(s, r);
    }
  }
  return f;
}

}  // namespace testutil
