#pragma once

#include <string>
#include <vector>

#include "semgraph/completeness.hpp"

namespace semgraph {

enum class CheckStatus { Pass, Fail, Undetermined };
const char* to_string(CheckStatus s);

struct CheckItem {
  std::string kind;  // "consistency" or "completeness"
  std::string subject;
  CheckStatus status = CheckStatus::Pass;
  std::vector<std::string> details;
};

struct SchemaCheckReport {
  std::vector<CheckItem> items;
  bool failed() const;
  std::size_t count(CheckStatus s) const;
  /// One `STATUS kind subject` line per item, details indented below.
  std::string text() const;
};

/// Every declared specialization through the consistency check and every
/// meaning with obligations through the completeness check.
SchemaCheckReport checkSchema(const Catalog& cat, ConsistencyEngine engine = ConsistencyEngine::Auto,
                              std::size_t bound = 8);

}  // namespace semgraph
