#include "semgraph/ast.hpp"

namespace semgraph {

const char* to_string(Scope s) {
  switch (s) {
    case Scope::Private: return "private";
    case Scope::Public: return "public";
    case Scope::Static: return "static";
  }
  return "private";
}

const char* to_string(SpecStyle s) {
  switch (s) {
    case SpecStyle::Normal: return "normal";
    case SpecStyle::SubRestricted: return "subRestricted";
    case SpecStyle::SuperRestricted: return "superRestricted";
  }
  return "normal";
}

const char* specSymbol(SpecStyle s) {
  switch (s) {
    case SpecStyle::Normal: return "<=";
    case SpecStyle::SubRestricted: return "!<=";
    case SpecStyle::SuperRestricted: return "<=!";
  }
  return "<=";
}

std::optional<SpecStyle> specStyleFromName(const std::string& name) {
  if (name == "normal") return SpecStyle::Normal;
  if (name == "subRestricted") return SpecStyle::SubRestricted;
  if (name == "superRestricted") return SpecStyle::SuperRestricted;
  return std::nullopt;
}

std::string LabelRef::text() const {
  std::string out;
  if (form == LabelForm::RootRelative) out = ".";
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (i) out += '.';
    out += segments[i];
  }
  return out;
}

std::string compoundRootText(const CompoundForm& form) {
  switch (form.op) {
    case CompoundOp::Product: return form.left + "^" + form.right;
    case CompoundOp::Group: return "*" + form.left;
    case CompoundOp::Union: return form.left + "||" + form.right;
    case CompoundOp::Intersection: return form.left + "&" + form.right;
    case CompoundOp::Join: {
      std::string l = form.joinLeft ? form.joinLeft->text() : "";
      std::string r = form.joinRight ? form.joinRight->text() : "";
      return form.left + "^" + form.right + "_{" + l + "&" + r + "}";
    }
  }
  return form.left;
}

}  // namespace semgraph
