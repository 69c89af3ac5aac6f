#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "semgraph/catalog.hpp"

namespace semgraph {

using LabelSet = std::set<std::string>;
using OccurrenceSet = std::set<LabelSet>;

/// True iff `s` is one of the occurrences denoted by `expr`.
bool occMember(const LabelOcc& expr, const LabelSet& s);

/// True iff some occurrence of `expr` contains every label of `s`.
bool occExtendable(const LabelOcc& expr, const LabelSet& s);

/// Exact occurrence set. Throws Error when `expr` has more than `leafBound` leaves.
OccurrenceSet occEnumerate(const LabelOcc& expr, std::size_t leafBound = 16);

std::size_t leafCount(const LabelOcc& expr);
bool occNullable(const LabelOcc& expr);

// -- consistency -------------------------------------------------------------

enum class ConsistencyEngine { Auto, Structural, Enumerate };
enum class Verdict { Consistent, Inconsistent, NotApplicable, Undetermined };

const char* to_string(Verdict v);
const char* to_string(ConsistencyEngine e);
ConsistencyEngine engineFromName(const std::string& name);

struct ConsistencyReport {
  MeaningLabel sub;
  MeaningLabel super;
  Verdict verdict = Verdict::Consistent;
  ConsistencyEngine engine = ConsistencyEngine::Structural;
  std::optional<LabelSet> counterexample;  // sub occurrence whose image is not valid
  std::optional<LabelSet> image;
  std::size_t bound = 0;
  std::string detail;
};

/// Checks occurrence consistency of `subExpr` against `superExpr` where `map`
/// sends sub leaf names to super leaf names; unmapped sub leaves are
/// extensions and are ignored.
ConsistencyReport checkOccConsistency(const LabelOcc& subExpr, const LabelOcc& superExpr,
                                      const std::map<std::string, std::string>& map,
                                      ConsistencyEngine engine = ConsistencyEngine::Auto,
                                      std::size_t leafBound = 16);

ConsistencyReport checkOccConsistency(const MeaningLabel& sub, const MeaningLabel& super, const Catalog& catalog,
                                      ConsistencyEngine engine = ConsistencyEngine::Auto,
                                      std::size_t leafBound = 16);

// -- completeness obligations ------------------------------------------------

/// One co-occurrence requirement introduced by component specialization:
/// every `context` node whose children (one per name) specialize the
/// components of `occurrence` needs a `target` node whose matching children
/// are super-nodes of them.
struct Obligation {
  MeaningLabel owner;    // the meaning whose specification is checked
  MeaningLabel context;  // K: composite meaning grouping the specialized components
  MeaningLabel target;   // m: parent of the external super meanings
  LabelSet occurrence;   // names of m's components required together
  std::map<std::string, MeaningLabel> contextComponent;  // m name -> K component label
  std::map<std::string, MeaningLabel> specialized;       // m name -> specialized component c_i

  std::string describe() const;
};

std::vector<Obligation> computeObligations(const Catalog& catalog, const MeaningLabel& owner);
std::vector<Obligation> computeAllObligations(const Catalog& catalog);

/// Index of a complement rule whose head and body syntactically cover the obligation.
std::optional<std::size_t> coveringRule(const Catalog& catalog, const Obligation& ob);

}  // namespace semgraph
