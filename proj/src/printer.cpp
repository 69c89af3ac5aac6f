#include <sstream>

#include "semgraph/parser.hpp"

namespace semgraph {

namespace {

void printConstraints(std::ostream& os, const std::vector<Constraint>& cs) {
  os << '{';
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i) os << "; ";
    os << printConstraint(cs[i]);
  }
  os << '}';
}

void printAtom(std::ostream& os, const PatternAtom& a);

void printAtoms(std::ostream& os, const std::vector<PatternAtom>& atoms) {
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) os << ", ";
    printAtom(os, atoms[i]);
  }
}

void printAtom(std::ostream& os, const PatternAtom& a) {
  switch (a.link) {
    case PatternAtom::Link::None:
      os << '$' << a.var << ':' << a.label.text();
      break;
    case PatternAtom::Link::LinkedIsSub:
      os << '$' << a.linkedVar << "<=$" << a.var << ':' << a.label.text();
      break;
    case PatternAtom::Link::LinkedIsSuper:
      os << '$' << a.var << ':' << a.label.text() << "<=$" << a.linkedVar;
      break;
  }
  if (!a.children.empty()) {
    os << " -> (";
    printAtoms(os, a.children);
    os << ')';
  }
}

void printOcc(std::ostream& os, const OccurrenceExpr& e);

void printComponent(std::ostream& os, const ComponentDecl& c) {
  if (c.scopeExplicit || c.scope != Scope::Private) os << to_string(c.scope) << ' ';
  os << c.name;
  if (c.setOf) os << "[*]";
  if (c.equivTarget) os << " <=> " << c.equivTarget->text();
  if (c.specTarget) os << ' ' << specSymbol(*c.specStyle) << ' ' << c.specTarget->text();
  if (c.refTarget) os << " --> " << c.refTarget->text();
  if (c.body) {
    os << " -> {";
    printOcc(os, *c.body);
    os << '}';
  }
  if (c.with) {
    os << " with ";
    printConstraints(os, *c.with);
  }
}

void printOcc(std::ostream& os, const OccurrenceExpr& e) {
  switch (e.kind) {
    case OccKind::Empty:
      break;
    case OccKind::Leaf:
      printComponent(os, e.leafValue());
      break;
    case OccKind::Optional:
      printOcc(os, e.children[0]);
      os << '?';
      break;
    case OccKind::Group:
      os << '(';
      printOcc(os, e.children[0]);
      os << ')';
      break;
    case OccKind::Conj:
      printOcc(os, e.children[0]);
      os << ", ";
      printOcc(os, e.children[1]);
      break;
    case OccKind::Disj:
      printOcc(os, e.children[0]);
      os << " | ";
      printOcc(os, e.children[1]);
      break;
  }
}

}  // namespace

std::string printOccurrence(const OccurrenceExpr& e) {
  std::ostringstream os;
  printOcc(os, e);
  return os.str();
}

std::string printConstraint(const Constraint& c) {
  std::ostringstream os;
  switch (c.kind) {
    case Constraint::Kind::Equivalence:
      os << c.lhs.text() << " <=> " << c.rhs.text();
      break;
    case Constraint::Kind::Specialization:
      os << c.lhs.text() << ' ' << specSymbol(c.style) << ' ' << c.rhs.text();
      break;
    case Constraint::Kind::Reference:
      os << c.lhs.text() << " --> " << c.rhs.text();
      break;
    case Constraint::Kind::Complement:
      printAtoms(os, c.head);
      os << " :- ";
      printAtoms(os, c.body);
      break;
  }
  return os.str();
}

std::string printTopDecl(const TopDecl& d) {
  std::ostringstream os;
  switch (d.kind) {
    case TopDecl::Kind::Meaning:
      if (d.intensive) os << "intensive ";
      os << "meaning " << d.label.text();
      if (d.body) {
        os << " -> {";
        printOcc(os, *d.body);
        os << '}';
      }
      if (d.with) {
        os << " with ";
        printConstraints(os, *d.with);
      }
      break;
    case TopDecl::Kind::Compound: {
      const CompoundForm& f = d.compound;
      os << "meaning ";
      switch (f.op) {
        case CompoundOp::Group: os << '*' << f.left; break;
        case CompoundOp::Product: os << f.left << " ^ " << f.right; break;
        case CompoundOp::Union: os << f.left << " || " << f.right; break;
        case CompoundOp::Intersection: os << f.left << " & " << f.right; break;
        case CompoundOp::Join:
          os << f.left << " ^ " << f.right << " join (" << f.joinLeft->text() << " & "
             << f.joinRight->text() << ')';
          break;
      }
      if (f.alias) os << " as " << *f.alias;
      os << ';';
      break;
    }
    case TopDecl::Kind::Specialize:
      os << "specialize " << d.sub.text() << ' ' << specSymbol(d.style) << ' ' << d.super.text()
         << " -> ";
      printConstraints(os, d.nested);
      break;
  }
  return os.str();
}

std::string printSchema(const SourceSchema& schema) {
  std::string out;
  for (const auto& d : schema.declarations) {
    out += printTopDecl(d);
    out += '\n';
  }
  return out;
}

}  // namespace semgraph
