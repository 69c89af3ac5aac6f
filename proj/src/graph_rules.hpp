#pragma once

// Shared instance-level checks used by mutation, validation and analysis.

#include <deque>
#include <set>
#include <string>

#include "semgraph/graph.hpp"

namespace semgraph::detail {

inline bool compoundLooking(const MeaningLabel& l) { return l.root().find_first_of("^&|*") != std::string::npos; }

inline std::string unknownLabelRule(const MeaningLabel& l) {
  return compoundLooking(l) ? "declare-to-use" : "unknown-meaning";
}

inline bool sameMeaning(const Catalog& cat, const MeaningLabel& a, const MeaningLabel& b) {
  return a == b || cat.equivalent(a, b);
}

inline bool hostLabelOk(const Catalog& cat, const ReferenceDecl& decl, const MeaningLabel& hostLabel) {
  if (decl.host.root().front() == '@') {
    MeaningLabel h = MeaningLabel::parse(std::string_view(decl.host.root()).substr(1));
    return sameMeaning(cat, hostLabel, h) || cat.isSubMeaning(hostLabel, h);
  }
  return sameMeaning(cat, hostLabel, decl.host) || cat.isSubMeaning(hostLabel, decl.host);
}

/// Composition ancestors of `id` (excluding itself) whose meaning is `scope`
/// or one of its sub meanings.
inline std::set<std::string> scopeAncestors(const MeaningGraph& g, const Catalog& cat, const std::string& id,
                                            const MeaningLabel& scope) {
  std::set<std::string> out, seen{id};
  std::deque<std::string> work{id};
  while (!work.empty()) {
    std::string cur = work.front();
    work.pop_front();
    for (const auto& p : g.parents(cur)) {
      if (!seen.insert(p).second) continue;
      const Node* n = g.node(p);
      if (n && (sameMeaning(cat, n->label, scope) || cat.isSubMeaning(n->label, scope))) out.insert(p);
      work.push_back(p);
    }
  }
  return out;
}

inline bool compositionReaches(const MeaningGraph& g, const std::string& from, const std::string& to) {
  std::set<std::string> seen{from};
  std::deque<std::string> work{from};
  while (!work.empty()) {
    std::string cur = work.front();
    work.pop_front();
    if (cur == to) return true;
    for (const auto& c : g.children(cur)) {
      if (seen.insert(c).second) work.push_back(c);
    }
  }
  return false;
}

/// Nodes identified with `id` through equivalence edges, including itself.
inline std::set<std::string> equivalenceClosure(const MeaningGraph& g, const std::string& id) {
  std::set<std::string> seen{id};
  std::deque<std::string> work{id};
  while (!work.empty()) {
    std::string cur = work.front();
    work.pop_front();
    for (const auto& e : g.equivalents(cur)) {
      if (seen.insert(e).second) work.push_back(e);
    }
  }
  return seen;
}

/// Every node reachable upward via specialization and equivalence edges.
inline std::set<std::string> superClosure(const MeaningGraph& g, const std::string& id) {
  std::set<std::string> seen{id};
  std::deque<std::string> work{id};
  while (!work.empty()) {
    std::string cur = work.front();
    work.pop_front();
    auto next = g.supers(cur);
    auto eq = g.equivalents(cur);
    next.insert(next.end(), eq.begin(), eq.end());
    for (const auto& s : next) {
      if (seen.insert(s).second) work.push_back(s);
    }
  }
  return seen;
}

}  // namespace semgraph::detail

#include "semgraph/analysis.hpp"

namespace semgraph::detail {

/// Instance-level check of component-specialization obligations.
std::vector<Violation> checkObligations(const MeaningGraph& g, const Catalog& cat,
                                        const std::vector<Obligation>& obligations);

/// Evaluates a derived meaning's conditions against the super-node `superId`.
bool derivedHolds(const MeaningGraph& g, const Catalog& cat, const DerivedDecl& d, const std::string& superId);

}  // namespace semgraph::detail
