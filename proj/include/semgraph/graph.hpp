#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <string>
#include <vector>

#include "semgraph/catalog.hpp"

namespace semgraph {

enum class EdgeKind { Composition, Equivalence, Specialization, Reference };

const char* to_string(EdgeKind k);
EdgeKind edgeKindFromName(const std::string& name);

struct Node {
  std::string id;
  MeaningLabel label;
  std::optional<std::string> value;

  friend bool operator==(const Node&, const Node&) = default;
};

/// Composition: parent -> child. Specialization: super -> sub. Reference:
/// ref -> host. Equivalence is stored once with `from < to`.
struct Edge {
  EdgeKind kind = EdgeKind::Composition;
  std::string from;
  std::string to;
  SpecStyle style = SpecStyle::Normal;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge& a, const Edge& b) {
    return std::tie(a.kind, a.from, a.to, a.style) <=> std::tie(b.kind, b.from, b.to, b.style);
  }
};

/// Raw instance graph. Catalog-aware checks live in the free functions below.
class MeaningGraph {
 public:
  bool hasNode(const std::string& id) const { return nodes_.count(id) > 0; }
  const Node* node(const std::string& id) const;
  const Node& at(const std::string& id) const;
  const std::map<std::string, Node>& nodes() const { return nodes_; }
  const std::set<Edge>& edges() const { return edges_; }
  std::size_t nodeCount() const { return nodes_.size(); }

  /// Inserts a node; re-inserting an identical node is a no-op.
  void insertNode(Node n);
  /// Inserts an edge without endpoint or label checks.
  void insertEdge(Edge e);
  bool hasEdge(const Edge& e) const;
  void removeEdge(const Edge& e);
  /// Removes the node and every incident edge.
  bool removeNode(const std::string& id);

  std::vector<Edge> outgoing(const std::string& id) const;
  std::vector<Edge> incoming(const std::string& id) const;
  std::vector<std::string> children(const std::string& id) const;
  std::vector<std::string> parents(const std::string& id) const;
  std::vector<std::string> supers(const std::string& id) const;
  std::vector<std::string> subs(const std::string& id) const;
  std::vector<std::string> equivalents(const std::string& id) const;
  std::optional<std::string> host(const std::string& id) const;
  std::vector<std::string> withLabel(const MeaningLabel& l) const;

  friend bool operator==(const MeaningGraph& a, const MeaningGraph& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  std::map<std::string, Node> nodes_;
  std::set<Edge> edges_;
  std::map<std::string, std::set<Edge>> out_;
  std::map<std::string, std::set<Edge>> in_;
};

/// Id of the interned node for a literal value, e.g. `'Joe'` for `#String`.
std::string valueNodeId(const MeaningLabel& label, const std::string& value);

// -- catalog-checked mutation --------------------------------------------------

void addNode(MeaningGraph& g, const Catalog& cat, const std::string& id, const MeaningLabel& label);
/// Interns a value node and returns its id.
std::string addValueNode(MeaningGraph& g, const Catalog& cat, const MeaningLabel& label, const std::string& value);
/// Adds an edge after kind-specific checks; reference edges replace the
/// previous reference of the same node. Specialization style is taken from
/// the catalog. Throws GraphError naming the violated rule.
void addEdge(MeaningGraph& g, const Catalog& cat, Edge e);

/// Deletes a node with cascade; returns the removed ids in sorted order.
std::vector<std::string> deleteNode(MeaningGraph& g, const Catalog& cat, const std::string& id, bool force = false);

// -- validation ----------------------------------------------------------------

struct Violation {
  Severity severity = Severity::Error;
  std::string rule;
  std::string subject;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
  friend auto operator<=>(const Violation& a, const Violation& b) {
    return std::tie(a.rule, a.subject, a.message, a.severity) <=> std::tie(b.rule, b.subject, b.message, b.severity);
  }
};

struct ValidationReport {
  std::vector<Violation> items;

  bool ok() const;
  std::size_t errorCount() const;
  std::size_t count(const std::string& rule, Severity severity = Severity::Error) const;
  std::string text() const;
};

struct ValidateOptions {
  /// Open graphs may lack mandatory components; such gaps are reported as info.
  bool open = false;
};

ValidationReport validate(const MeaningGraph& g, const Catalog& cat, ValidateOptions options = {});

// -- pattern matching and chase ---------------------------------------------

using Binding = std::map<std::string, std::string>;

/// All homomorphic matches of `atoms` extending `seed`, in deterministic order.
std::vector<Binding> matchPattern(const MeaningGraph& g, const Catalog& cat, const std::vector<ResolvedAtom>& atoms,
                                  const Binding& seed = {});

struct ChaseOptions {
  int maxRounds = 64;
};

struct ChaseResult {
  MeaningGraph graph;
  int rounds = 0;
  std::vector<std::string> created;
};

/// Repairs complement violations. Throws GraphError("chase-nontermination")
/// when `maxRounds` is exhausted.
ChaseResult chase(const MeaningGraph& g, const Catalog& cat, ChaseOptions options = {});

// -- intensive equivalence -------------------------------------------------

/// Partition of all nodes into congruence classes (ids sorted, classes sorted).
std::vector<std::vector<std::string>> intensiveClasses(const MeaningGraph& g, const Catalog& cat);
bool intensiveEq(const MeaningGraph& g, const Catalog& cat, const std::string& a, const std::string& b);

/// Merges `drop` into `keep`; equivalent children are merged recursively.
/// Rolls back and throws GraphError when preconditions fail or new
/// validation errors would appear.
void mergeEquivalent(MeaningGraph& g, const Catalog& cat, const std::string& keep, const std::string& drop);
/// Merges every intensive class down to one node; returns removed node count.
std::size_t mergeAllEquivalent(MeaningGraph& g, const Catalog& cat);

// -- files -------------------------------------------------------------------

std::string toJson(const MeaningGraph& g);
MeaningGraph fromJson(const std::string& text);
MeaningGraph loadGraph(const std::string& path);
/// Writes atomically through a temporary file.
void saveGraph(const MeaningGraph& g, const std::string& path);
std::string toDot(const MeaningGraph& g);

}  // namespace semgraph
