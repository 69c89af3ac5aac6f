#pragma once

// Random well-formed ASTs for round-trip properties.

#include <random>
#include <string>
#include <vector>

#include "semgraph/ast.hpp"

namespace testutil {

class AstGen {
 public:
  explicit AstGen(unsigned seed) : rng_(seed) {}

  semgraph::SourceSchema schema() {
    semgraph::SourceSchema s;
    int n = pick(1, 4);
    for (int i = 0; i < n; ++i) s.declarations.push_back(topDecl());
    return s;
  }

 private:
  using Occ = semgraph::OccurrenceExpr;

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(int percent = 50) { return pick(1, 100) <= percent; }

  std::string ident() {
    static const char* names[] = {"Teacher", "Student", "Course", "Grade", "Score", "Member", "Head", "Zero",
                                  "Pred",    "Name",    "Site",   "Place", "A",     "B",      "x1",   "Ab_c"};
    return names[pick(0, 15)];
  }
  std::string root() { return "#" + ident(); }

  semgraph::LabelRef label(bool absoluteOnly = false) {
    semgraph::LabelRef l;
    int form = absoluteOnly ? 0 : pick(0, 2);
    l.form = form == 0 ? semgraph::LabelForm::Absolute
                       : form == 1 ? semgraph::LabelForm::RootRelative : semgraph::LabelForm::Local;
    if (form == 0) {
      int r = pick(0, 9);
      if (r == 0) {
        l.segments.push_back("*" + root());
      } else if (r == 1) {
        l.segments.push_back(root() + "^" + root());
      } else if (r == 2) {
        semgraph::LabelRef inner = label(true);
        if (inner.segments[0][0] == '@') inner.segments[0] = root();
        l.segments.push_back("@" + inner.text());
        return l;
      } else {
        l.segments.push_back(root());
      }
    } else {
      l.segments.push_back(coin(10) ? ident() + "&" + ident() : ident());
    }
    int extra = pick(0, 2);
    for (int i = 0; i < extra; ++i) l.segments.push_back(ident());
    return l;
  }

  semgraph::SpecStyle style() { return static_cast<semgraph::SpecStyle>(pick(0, 2)); }

  semgraph::PatternAtom atom(bool links, int depth) {
    semgraph::PatternAtom a;
    a.var = "v" + std::to_string(var_++);
    a.label = label();
    if (links && coin(30)) {
      a.link = coin() ? semgraph::PatternAtom::Link::LinkedIsSub : semgraph::PatternAtom::Link::LinkedIsSuper;
      a.linkedVar = "v" + std::to_string(var_++);
    }
    if (depth < 2 && coin(35)) {
      int n = pick(1, 2);
      for (int i = 0; i < n; ++i) a.children.push_back(atom(links, depth + 1));
    }
    return a;
  }

  semgraph::Constraint constraint(bool allowComplement) {
    semgraph::Constraint c;
    int k = pick(0, allowComplement ? 3 : 2);
    if (k == 3) {
      c.kind = semgraph::Constraint::Kind::Complement;
      int nh = pick(1, 2), nb = pick(1, 2);
      for (int i = 0; i < nh; ++i) c.head.push_back(atom(true, 0));
      for (int i = 0; i < nb; ++i) c.body.push_back(atom(false, 0));
      return c;
    }
    c.kind = k == 0 ? semgraph::Constraint::Kind::Equivalence
                    : k == 1 ? semgraph::Constraint::Kind::Specialization : semgraph::Constraint::Kind::Reference;
    if (k == 1) c.style = style();
    c.lhs = label();
    c.rhs = label();
    return c;
  }

  std::vector<semgraph::Constraint> block(bool allowComplement) {
    std::vector<semgraph::Constraint> out;
    int n = pick(0, 3);
    for (int i = 0; i < n; ++i) out.push_back(constraint(allowComplement));
    return out;
  }

  semgraph::ComponentDecl component(const std::string& name, int depth) {
    semgraph::ComponentDecl c;
    c.name = name;
    c.scopeExplicit = coin(40);
    if (c.scopeExplicit) c.scope = static_cast<semgraph::Scope>(pick(0, 2));
    c.setOf = coin(30);
    int inline_ = pick(0, 5);
    if (inline_ == 0) c.equivTarget = label();
    if (inline_ == 1) {
      c.specStyle = style();
      c.specTarget = label();
    }
    if (coin(10)) c.refTarget = label();
    if (depth < 2 && coin(20)) c.body = body(depth + 1);
    if (coin(15)) c.with = block(true);
    return c;
  }

  // Mirrors the grammar's precedence so printing needs no implicit parens.
  Occ post(std::vector<std::string>& names, int depth, int& budget) {
    Occ p;
    if (budget > 1 && coin(20)) {
      p = Occ::makeGroup(disj(names, depth, budget));
    } else {
      --budget;
      p = Occ::makeLeaf(component(fresh(names), depth));
    }
    if (coin(25)) p = Occ::makeOptional(std::move(p));
    return p;
  }

  Occ conj(std::vector<std::string>& names, int depth, int& budget) {
    Occ e = post(names, depth, budget);
    while (budget > 0 && coin(40)) e = Occ::makeConj(std::move(e), post(names, depth, budget));
    return e;
  }

  Occ disj(std::vector<std::string>& names, int depth, int& budget) {
    Occ e = conj(names, depth, budget);
    while (budget > 0 && coin(30)) e = Occ::makeDisj(std::move(e), conj(names, depth, budget));
    return e;
  }

  std::string fresh(std::vector<std::string>& names) {
    std::string n = ident() + std::to_string(names.size());
    names.push_back(n);
    return n;
  }

  Occ body(int depth) {
    if (coin(10)) return Occ::empty();
    std::vector<std::string> names;
    int budget = pick(1, 6);
    return disj(names, depth, budget);
  }

  semgraph::TopDecl topDecl() {
    semgraph::TopDecl d;
    int k = pick(0, 9);
    if (k < 6) {
      d.kind = semgraph::TopDecl::Kind::Meaning;
      d.intensive = coin(20);
      d.label.form = semgraph::LabelForm::Absolute;
      d.label.segments = {root()};
      if (coin(85)) d.body = body(0);
      if (coin(30)) d.with = block(true);
    } else if (k < 8) {
      d.kind = semgraph::TopDecl::Kind::Compound;
      auto& f = d.compound;
      f.op = static_cast<semgraph::CompoundOp>(pick(0, 4));
      f.left = root();
      if (f.op != semgraph::CompoundOp::Group) f.right = root();
      if (f.op == semgraph::CompoundOp::Join) {
        f.joinLeft = label(true);
        f.joinRight = label(true);
        f.joinLeft->segments[0] = root();
        f.joinRight->segments[0] = root();
      }
      if ((f.op == semgraph::CompoundOp::Product || f.op == semgraph::CompoundOp::Join) && coin(30)) f.alias = ident();
      d.label.form = semgraph::LabelForm::Absolute;
      d.label.segments = {semgraph::compoundRootText(f)};
    } else {
      d.kind = semgraph::TopDecl::Kind::Specialize;
      d.sub = label(true);
      d.style = style();
      d.super = label(true);
      d.nested = block(true);
    }
    return d;
  }

  std::mt19937 rng_;
  int var_ = 0;
};

}  // namespace testutil
