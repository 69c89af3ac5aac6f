#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semgraph/diagnostics.hpp"
#include "semgraph/occurrence.hpp"

namespace semgraph {

enum class Scope { Private, Public, Static };

/// `<=` normal, `!<=` sub-node restriction, `<=!` super-node restriction.
enum class SpecStyle { Normal, SubRestricted, SuperRestricted };

const char* to_string(Scope s);
const char* to_string(SpecStyle s);   // "normal", "subRestricted", "superRestricted"
const char* specSymbol(SpecStyle s);  // "<=", "!<=", "<=!"
std::optional<SpecStyle> specStyleFromName(const std::string& name);

enum class LabelForm { Absolute, RootRelative, Local };

/// A label as written in source. For absolute references `segments[0]` is the
/// full root text including its sigil, e.g. "#School", "#School^#GIS",
/// "*#School" or "@#School.Teacher".
struct LabelRef {
  LabelForm form = LabelForm::Local;
  std::vector<std::string> segments;
  Span span;

  std::string text() const;
  friend bool operator==(const LabelRef&, const LabelRef&) = default;
};

/// One atom of a constraint pattern: `$v:l`, `$w<=$v:l` or `$v:l<=$w`,
/// optionally followed by `-> (children)`.
struct PatternAtom {
  enum class Link { None, LinkedIsSub, LinkedIsSuper };

  std::string var;
  LabelRef label;
  Link link = Link::None;
  std::string linkedVar;
  std::vector<PatternAtom> children;

  friend bool operator==(const PatternAtom&, const PatternAtom&) = default;
};

struct Constraint {
  enum class Kind { Equivalence, Specialization, Reference, Complement };

  Kind kind = Kind::Equivalence;
  LabelRef lhs;
  LabelRef rhs;
  SpecStyle style = SpecStyle::Normal;
  std::vector<PatternAtom> head;  // complement: component-specialization pattern
  std::vector<PatternAtom> body;  // complement: component pattern
  Span span;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

struct ComponentDecl;
using OccurrenceExpr = BasicOcc<ComponentDecl>;

struct ComponentDecl {
  Scope scope = Scope::Private;
  bool scopeExplicit = false;
  std::string name;
  bool setOf = false;
  std::optional<LabelRef> equivTarget;  // inline `<=> l`
  std::optional<SpecStyle> specStyle;   // inline `<= l` / `!<= l` / `<=! l`
  std::optional<LabelRef> specTarget;
  std::optional<LabelRef> refTarget;    // inline `--> l`
  std::optional<OccurrenceExpr> body;
  std::optional<std::vector<Constraint>> with;
  Span span;

  friend bool operator==(const ComponentDecl&, const ComponentDecl&) = default;
};

enum class CompoundOp { Product, Group, Union, Intersection, Join };

struct CompoundForm {
  CompoundOp op = CompoundOp::Product;
  std::string left;   // root text, e.g. "#School"
  std::string right;  // empty for Group
  std::optional<LabelRef> joinLeft;
  std::optional<LabelRef> joinRight;
  std::optional<std::string> alias;  // local name for the second product factor

  friend bool operator==(const CompoundForm&, const CompoundForm&) = default;
};

struct TopDecl {
  enum class Kind { Meaning, Compound, Specialize };

  Kind kind = Kind::Meaning;
  bool intensive = false;
  LabelRef label;  // Meaning: the root label
  std::optional<OccurrenceExpr> body;
  std::optional<std::vector<Constraint>> with;
  CompoundForm compound;
  // Specialize
  LabelRef sub;
  LabelRef super;
  SpecStyle style = SpecStyle::Normal;
  std::vector<Constraint> nested;
  Span span;

  friend bool operator==(const TopDecl&, const TopDecl&) = default;
};

struct SourceSchema {
  std::vector<TopDecl> declarations;
  friend bool operator==(const SourceSchema&, const SourceSchema&) = default;
};

/// Root label text generated by a compound constructor, e.g. "#School^#GIS".
std::string compoundRootText(const CompoundForm& form);

}  // namespace semgraph
