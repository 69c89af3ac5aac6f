#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semgraph/completeness.hpp"
#include "semgraph/graph.hpp"

namespace semgraph {

/// A specialize statement that would break consistency or completeness.
class SpecializeRejected : public Error {
 public:
  using Error::Error;
};

/// Appends a compound declaration (`meaning #A ^ #B;` etc.) and re-resolves.
Catalog declareCompound(const Catalog& cat, std::string_view declText);

/// Adds a derived meaning and re-resolves.
Catalog declareDerived(const Catalog& cat, DerivedDecl decl);
/// Parses `path op literal` with op one of == != < <= > >=.
DerivedCondition parseDerivedCondition(std::string_view text);

/// Creates intersection nodes under common ancestor nodes and the generated
/// intersection component nodes. Returns the ids created.
std::vector<std::string> materializeIntersection(MeaningGraph& g, const Catalog& cat, const MeaningLabel& label);

/// Operand node pairs whose joint components share a super-node, in id order.
std::vector<std::pair<std::string, std::string>> joinPairs(const MeaningGraph& g, const Catalog& cat,
                                                           const MeaningLabel& label);
/// Stores one join node per matching pair and drops stale ones. Returns the ids created.
std::vector<std::string> materializeJoin(MeaningGraph& g, const Catalog& cat, const MeaningLabel& label);

struct SpecializeResult {
  Catalog catalog;
  MeaningGraph graph;
  std::size_t statement = 0;  // index among the schema declarations
  std::vector<std::string> created;
  std::vector<ConsistencyReport> consistency;
  std::vector<CompletenessReport> completeness;
};

/// Adds the statement to the schema, checks it and migrates the graph.
/// Throws SpecializeRejected without touching the inputs when a check fails.
SpecializeResult applySpecialize(const Catalog& cat, const MeaningGraph& g, const TopDecl& stmt,
                                 std::size_t bound = 8);
SpecializeResult applySpecialize(const Catalog& cat, const MeaningGraph& g, std::string_view stmtText,
                                 std::size_t bound = 8);

}  // namespace semgraph
