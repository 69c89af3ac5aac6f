#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "semgraph/ast.hpp"
#include "semgraph/label.hpp"
#include "semgraph/parser.hpp"

namespace semgraph {

/// Occurrence expression whose leaves are local component names.
using LabelOcc = BasicOcc<std::string>;

std::string printLabelOcc(const LabelOcc& e);
LabelOcc toLabelOcc(const OccurrenceExpr& e);

enum class MeaningOrigin { Declared, Component, Inherited, PureReference, Compound, Derived, Builtin };
const char* to_string(MeaningOrigin o);

struct ComponentInfo {
  std::string name;
  MeaningLabel label;
  Scope scope = Scope::Private;
  bool setOf = false;
  bool inherited = false;
  std::optional<MeaningLabel> origin;  // super component an inherited entry came from
};

struct ResolvedMeaning {
  MeaningLabel label;
  MeaningOrigin origin = MeaningOrigin::Declared;
  LabelOcc occurrence;
  std::vector<ComponentInfo> components;  // own components first, then inherited
  std::vector<std::string> overrides;     // own names that replace inherited ones
  bool intensive = false;
  bool value = false;

  const ComponentInfo* component(const std::string& name) const;
  /// Component whose label is `l`.
  const ComponentInfo* componentByLabel(const MeaningLabel& l) const;
};

enum class DeclSource { Declared, Reference, Compound, Derived };

struct SpecDecl {
  MeaningLabel sub;
  SpecStyle style = SpecStyle::Normal;
  MeaningLabel super;
  DeclSource source = DeclSource::Declared;
};

struct ReferenceDecl {
  MeaningLabel ref;
  MeaningLabel host;
  /// Composite meaning whose instance must contain both the reference node
  /// and its host; set when the declaration used abbreviated labels.
  std::optional<MeaningLabel> scope;
};

struct ResolvedAtom {
  std::string var;
  MeaningLabel label;
  PatternAtom::Link link = PatternAtom::Link::None;
  std::string linkedVar;
  std::vector<ResolvedAtom> children;
};

struct ComplementRule {
  std::size_t index = 0;
  MeaningLabel owner;
  std::vector<ResolvedAtom> head;
  std::vector<ResolvedAtom> body;
  ComplementVars vars;
  Constraint source;
};

struct CompoundInfo {
  CompoundForm form;
  MeaningLabel label;
  std::vector<MeaningLabel> operands;
  std::optional<MeaningLabel> ancestor;  // intersection: common super; join: common super of joints
  std::optional<MeaningLabel> joinLeft;
  std::optional<MeaningLabel> joinRight;
  std::vector<MeaningLabel> generated;  // generated component labels
};

/// `component op literal`, where component is a dotted path of local names
/// under the super meaning.
struct DerivedCondition {
  enum class Op { Eq, Ne, Lt, Le, Gt, Ge };
  std::string path;
  Op op = Op::Eq;
  std::string literal;
};

struct DerivedDecl {
  MeaningLabel sub;
  MeaningLabel super;
  std::vector<DerivedCondition> conditions;  // conjunction
};

class Catalog {
 public:
  Catalog() = default;

  static Catalog resolve(const SourceSchema& schema, std::vector<DerivedDecl> derived = {});

  const ResolvedMeaning* find(const MeaningLabel& l) const;
  const ResolvedMeaning& at(const MeaningLabel& l) const;
  bool contains(const MeaningLabel& l) const { return find(l) != nullptr; }

  const std::map<MeaningLabel, ResolvedMeaning>& meanings() const { return meanings_; }
  const std::vector<SpecDecl>& specializations() const { return specs_; }
  const std::map<MeaningLabel, ReferenceDecl>& references() const { return references_; }
  const std::vector<ComplementRule>& complements() const { return complements_; }
  const std::map<MeaningLabel, CompoundInfo>& compounds() const { return compounds_; }
  const std::map<MeaningLabel, DerivedDecl>& derived() const { return derived_; }
  const std::vector<DerivedDecl>& derivedDecls() const { return derivedDecls_; }
  const SourceSchema& source() const { return source_; }

  bool equivalent(const MeaningLabel& a, const MeaningLabel& b) const;
  /// Members of the equivalence class of `l` (always contains `l`).
  std::vector<MeaningLabel> equivalenceClass(const MeaningLabel& l) const;
  /// Equivalence pairs (a < b), closed.
  std::vector<std::pair<MeaningLabel, MeaningLabel>> equivalencePairs() const;

  /// Reflexive-transitive closure of declared super meanings, BFS in
  /// declaration order.
  std::vector<MeaningLabel> superClosure(const MeaningLabel& l) const;
  /// True when `super` is reachable from `sub` through at least one declared
  /// specialization, possibly passing through equivalent labels.
  bool isSubMeaning(const MeaningLabel& sub, const MeaningLabel& super) const;
  /// Style that governs node-level edges between the two meanings; nullopt if
  /// `sub` is not a sub meaning of `super`.
  std::optional<SpecStyle> styleBetween(const MeaningLabel& sub, const MeaningLabel& super) const;

  /// Maps components of `sub` onto components of `super`. Components without
  /// an image are extensions and are absent from the map.
  std::map<MeaningLabel, MeaningLabel> componentMap(const MeaningLabel& sub, const MeaningLabel& super) const;

  /// Pairs (component, external super) where a component of `l` (at any depth)
  /// specializes a component of a meaning outside `l`'s super hierarchy.
  std::vector<std::pair<MeaningLabel, MeaningLabel>> componentSpecializations(const MeaningLabel& l) const;

  /// True for intensive meanings and for meanings whose node equality is
  /// decided structurally because of an intensive ancestor or super.
  bool isStructural(const MeaningLabel& l) const;

  /// Declared host of reference meaning `l`, if any.
  const ReferenceDecl* referenceOf(const MeaningLabel& l) const;

  /// Components under composite `parent` whose label is or is equivalent to `child`.
  const ComponentInfo* componentEntry(const MeaningLabel& parent, const MeaningLabel& child) const;

  /// Sorted `kind<TAB>fields` lines.
  std::string dump() const;

 private:
  friend class CatalogBuilder;

  std::map<MeaningLabel, ResolvedMeaning> meanings_;
  std::vector<SpecDecl> specs_;
  std::map<MeaningLabel, MeaningLabel> equivRep_;  // union-find representatives (flattened)
  std::map<MeaningLabel, ReferenceDecl> references_;
  std::vector<ComplementRule> complements_;
  std::map<MeaningLabel, CompoundInfo> compounds_;
  std::map<MeaningLabel, DerivedDecl> derived_;
  std::vector<DerivedDecl> derivedDecls_;
  std::set<MeaningLabel> intensives_;
  SourceSchema source_;
  std::map<MeaningLabel, std::vector<MeaningLabel>> directSupers_;
};

/// Resolves a label reference. `context` is the enclosing composite; Local
/// names are searched from the context outwards.
MeaningLabel resolveLabelRef(const LabelRef& ref, const MeaningLabel* context,
                             const std::map<MeaningLabel, ResolvedMeaning>& meanings);

}  // namespace semgraph
