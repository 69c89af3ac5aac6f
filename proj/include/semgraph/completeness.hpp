#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semgraph/analysis.hpp"
#include "semgraph/graph.hpp"

namespace semgraph {

enum class Completeness { Complete, Incomplete, Undetermined };
const char* to_string(Completeness c);

struct ObligationResult {
  Obligation obligation;
  std::optional<std::size_t> rule;  // syntactically covering complement rule
  Completeness verdict = Completeness::Undetermined;
  std::string detail;
};

struct CompletenessReport {
  MeaningLabel meaning;
  Completeness verdict = Completeness::Complete;
  std::vector<ObligationResult> obligations;
  std::optional<MeaningGraph> witness;  // smallest graph left dangling by the chase
  std::size_t bound = 8;

  std::string text() const;
};

/// Builds a skeleton graph per obligation, chases it and checks the obligation on the result.
/// Skeletons larger than `bound` nodes are not explored.
CompletenessReport checkCompleteness(const Catalog& cat, const MeaningLabel& meaning, std::size_t bound = 8);

/// One report per meaning that carries obligations.
std::vector<CompletenessReport> checkAllCompleteness(const Catalog& cat, std::size_t bound = 8);

}  // namespace semgraph
