#include "semgraph/catalog.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

namespace semgraph {

const char* to_string(MeaningOrigin o) {
  switch (o) {
    case MeaningOrigin::Declared: return "declared";
    case MeaningOrigin::Component: return "component";
    case MeaningOrigin::Inherited: return "inherited";
    case MeaningOrigin::PureReference: return "pure-reference";
    case MeaningOrigin::Compound: return "compound";
    case MeaningOrigin::Derived: return "derived";
    case MeaningOrigin::Builtin: return "builtin";
  }
  return "declared";
}

namespace {

void printLabelOccTo(std::ostream& os, const LabelOcc& e) {
  switch (e.kind) {
    case OccKind::Empty: break;
    case OccKind::Leaf: os << e.leafValue(); break;
    case OccKind::Optional:
      printLabelOccTo(os, e.children[0]);
      os << '?';
      break;
    case OccKind::Group:
      os << '(';
      printLabelOccTo(os, e.children[0]);
      os << ')';
      break;
    case OccKind::Conj:
    case OccKind::Disj: {
      bool paren0 = e.children[0].kind == OccKind::Disj && e.kind == OccKind::Conj;
      bool paren1 = e.children[1].kind == OccKind::Conj || e.children[1].kind == OccKind::Disj;
      if (paren0) os << '(';
      printLabelOccTo(os, e.children[0]);
      if (paren0) os << ')';
      os << (e.kind == OccKind::Conj ? ", " : " | ");
      if (paren1) os << '(';
      printLabelOccTo(os, e.children[1]);
      if (paren1) os << ')';
      break;
    }
  }
}

bool isCompoundOrPureRoot(const std::string& root) {
  return root.find_first_of("^&|*@") != std::string::npos;
}

}  // namespace

std::string printLabelOcc(const LabelOcc& e) {
  std::ostringstream os;
  printLabelOccTo(os, e);
  return os.str();
}

LabelOcc toLabelOcc(const OccurrenceExpr& e) {
  return mapLeaves<std::string>(e, [](const ComponentDecl& c) { return std::optional<std::string>(c.name); });
}

const ComponentInfo* ResolvedMeaning::component(const std::string& name) const {
  for (const auto& c : components) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

const ComponentInfo* ResolvedMeaning::componentByLabel(const MeaningLabel& l) const {
  for (const auto& c : components) {
    if (c.label == l) return &c;
  }
  return nullptr;
}

MeaningLabel resolveLabelRef(const LabelRef& ref, const MeaningLabel* context,
                             const std::map<MeaningLabel, ResolvedMeaning>& meanings) {
  if (ref.segments.empty()) throw ResolutionError("empty label", ref.span);
  switch (ref.form) {
    case LabelForm::Absolute: {
      MeaningLabel l(ref.segments[0], std::vector<std::string>(ref.segments.begin() + 1, ref.segments.end()));
      if (l.root().front() == '@') {
        MeaningLabel host = MeaningLabel::parse(std::string_view(l.root()).substr(1));
        if (!meanings.count(host)) {
          throw ResolutionError("unresolved label '" + host.str() + "' in pure reference", ref.span);
        }
        return l;
      }
      if (!meanings.count(l)) throw ResolutionError("unresolved label '" + l.str() + "'", ref.span);
      return l;
    }
    case LabelForm::RootRelative: {
      if (!context) throw ResolutionError("root-relative label '" + ref.text() + "' has no context", ref.span);
      MeaningLabel l = context->rootLabel();
      for (const auto& s : ref.segments) l = l.child(s);
      if (!meanings.count(l)) {
        throw ResolutionError("unresolved label '" + ref.text() + "' under " + context->rootLabel().str(), ref.span);
      }
      return l;
    }
    case LabelForm::Local: {
      if (!context) throw ResolutionError("local label '" + ref.text() + "' has no context", ref.span);
      std::optional<MeaningLabel> cur = *context;
      while (cur) {
        MeaningLabel l = *cur;
        for (const auto& s : ref.segments) l = l.child(s);
        if (meanings.count(l)) return l;
        cur = cur->parent();
      }
      throw ResolutionError("unresolved label '" + ref.text() + "' in context " + context->str(), ref.span);
    }
  }
  throw ResolutionError("unresolved label", ref.span);
}

// ---------------------------------------------------------------------------

class CatalogBuilder {
 public:
  CatalogBuilder(const SourceSchema& schema, std::vector<DerivedDecl> derived) {
    c_.source_ = schema;
    c_.derivedDecls_ = std::move(derived);
  }

  Catalog build() {
    for (const auto& d : c_.source_.declarations) {
      if (d.kind == TopDecl::Kind::Meaning) declareMeaning(d);
    }
    for (const char* builtin : {"#String", "#Number"}) {
      MeaningLabel l(builtin);
      auto& m = c_.meanings_[l];
      if (m.label.empty()) {
        m.label = l;
        m.origin = MeaningOrigin::Builtin;
      }
      m.value = true;
    }
    for (const auto& d : c_.source_.declarations) {
      if (d.kind == TopDecl::Kind::Specialize) queueSpecialize(d);
    }

    resolvePending(/*deferMissing=*/true);
    rebuildSupers();
    for (const auto& d : c_.source_.declarations) {
      if (d.kind == TopDecl::Kind::Compound) declareCompound(d);
    }
    pending_ = std::move(deferred_);
    deferred_.clear();
    resolvePending(/*deferMissing=*/false);
    for (const auto& d : c_.derivedDecls_) declareDerived(d);
    synthesizePureReferences();
    rebuildSupers();
    checkSpecAcyclic();

    for (const auto& [l, m] : c_.meanings_) c_.equivRep_[l] = l;
    for (const auto& [a, b] : equivPairs_) unite(a, b);
    closeEquivalences();

    std::vector<MeaningLabel> labels;
    for (const auto& [l, m] : c_.meanings_) labels.push_back(l);
    for (const auto& l : labels) processInheritance(l);
    for (const auto& [l, m] : c_.meanings_) {
      if (!c_.equivRep_.count(l)) c_.equivRep_[l] = l;
    }
    for (const auto& [a, b] : inheritedEquiv_) unite(a, b);
    closeEquivalences();
    for (auto& [l, rep] : c_.equivRep_) rep = find(l);

    resolveComplements();
    return std::move(c_);
  }

 private:
  struct Pending {
    enum class Kind { Constraint, Inline };
    Kind kind;
    Constraint constraint;
    MeaningLabel context;       // resolution context for lhs
    MeaningLabel rhsContext;    // resolution context for rhs
    std::optional<MeaningLabel> subject;  // inline: the component itself
  };

  void declareMeaning(const TopDecl& d) {
    if (d.label.segments.size() != 1) {
      throw ResolutionError("meaning declarations must name a root meaning: '" + d.label.text() + "'", d.span);
    }
    MeaningLabel l(d.label.segments[0]);
    if (c_.meanings_.count(l)) throw ResolutionError("duplicate meaning declaration '" + l.str() + "'", d.span);
    auto& m = c_.meanings_[l];
    m.label = l;
    m.origin = MeaningOrigin::Declared;
    m.intensive = d.intensive;
    if (d.intensive) c_.intensives_.insert(l);
    if (d.body) declareBody(l, *d.body);
    if (d.with) queueWith(l, *d.with);
  }

  void declareBody(const MeaningLabel& owner, const OccurrenceExpr& body) {
    c_.meanings_[owner].occurrence = simplifyEmpty(toLabelOcc(body));
    forEachLeaf(body, [&](const ComponentDecl& comp) {
      MeaningLabel cl = owner.child(comp.name);
      if (c_.meanings_.count(cl)) throw ResolutionError("duplicate meaning declaration '" + cl.str() + "'", comp.span);
      c_.meanings_[owner].components.push_back({comp.name, cl, comp.scope, comp.setOf, false, std::nullopt});
      auto& cm = c_.meanings_[cl];
      cm.label = cl;
      cm.origin = MeaningOrigin::Component;
      if (comp.body) declareBody(cl, *comp.body);
      if (comp.equivTarget) {
        Constraint k;
        k.kind = Constraint::Kind::Equivalence;
        k.rhs = *comp.equivTarget;
        k.span = comp.span;
        pending_.push_back({Pending::Kind::Inline, k, owner, owner, cl});
      }
      if (comp.specTarget) {
        Constraint k;
        k.kind = Constraint::Kind::Specialization;
        k.style = *comp.specStyle;
        k.rhs = *comp.specTarget;
        k.span = comp.span;
        pending_.push_back({Pending::Kind::Inline, k, owner, owner, cl});
      }
      if (comp.refTarget) {
        Constraint k;
        k.kind = Constraint::Kind::Reference;
        k.rhs = *comp.refTarget;
        k.span = comp.span;
        pending_.push_back({Pending::Kind::Inline, k, owner, owner, cl});
      }
      if (comp.with) queueWith(cl, *comp.with);
    });
  }

  void queueWith(const MeaningLabel& owner, const std::vector<Constraint>& cs) {
    for (const auto& k : cs) {
      if (k.kind == Constraint::Kind::Complement) {
        complementsSrc_.emplace_back(owner, k);
      } else {
        pending_.push_back({Pending::Kind::Constraint, k, owner, owner, std::nullopt});
      }
    }
  }

  void queueSpecialize(const TopDecl& d) {
    MeaningLabel sub = resolveLabelRef(d.sub, nullptr, c_.meanings_);
    MeaningLabel super = resolveLabelRef(d.super, nullptr, c_.meanings_);
    Constraint top;
    top.kind = Constraint::Kind::Specialization;
    top.style = d.style;
    top.lhs = d.sub;
    top.rhs = d.super;
    top.span = d.span;
    pending_.push_back({Pending::Kind::Constraint, top, sub, super, std::nullopt});
    for (const auto& k : d.nested) {
      if (k.kind == Constraint::Kind::Complement) {
        complementsSrc_.emplace_back(sub, k);
      } else {
        pending_.push_back({Pending::Kind::Constraint, k, sub, super, std::nullopt});
      }
    }
  }

  static bool mentionsCompound(const LabelRef& r) {
    return r.form == LabelForm::Absolute && !r.segments.empty() && isCompoundOrPureRoot(r.segments[0]);
  }

  void resolvePending(bool deferMissing) {
    for (auto& p : pending_) {
      try {
        resolveOne(p);
      } catch (const ResolutionError&) {
        bool compoundish = mentionsCompound(p.constraint.lhs) || mentionsCompound(p.constraint.rhs);
        if (deferMissing && compoundish) {
          deferred_.push_back(p);
        } else {
          throw;
        }
      }
    }
    pending_.clear();
  }

  void resolveOne(const Pending& p) {
    const Constraint& k = p.constraint;
    MeaningLabel lhs = p.subject ? *p.subject : resolveLabelRef(k.lhs, &p.context, c_.meanings_);
    MeaningLabel rhs = resolveLabelRef(k.rhs, &p.rhsContext, c_.meanings_);
    switch (k.kind) {
      case Constraint::Kind::Equivalence:
        equivPairs_.emplace_back(lhs, rhs);
        break;
      case Constraint::Kind::Specialization:
        addSpec({lhs, k.style, rhs, DeclSource::Declared});
        break;
      case Constraint::Kind::Reference: {
        if (rhs.root().front() != '@' && !c_.meanings_.count(rhs)) {
          throw ResolutionError("reference to undeclared host '" + rhs.str() + "'", k.span);
        }
        ReferenceDecl r{lhs, rhs, std::nullopt};
        bool abbreviated = (p.subject || k.lhs.form != LabelForm::Absolute) && k.rhs.form != LabelForm::Absolute;
        if (abbreviated && lhs.root() == rhs.root()) {
          MeaningLabel scope = lhs.rootLabel();
          const auto& a = lhs.path();
          const auto& b = rhs.path();
          for (std::size_t i = 0; i < a.size() && i < b.size() && a[i] == b[i]; ++i) scope = scope.child(a[i]);
          r.scope = scope;
        }
        if (c_.references_.count(lhs)) {
          throw ResolutionError("reference meaning '" + lhs.str() + "' declared twice", k.span);
        }
        c_.references_[lhs] = r;
        referenceHosts_.push_back(rhs);
        addSpec({lhs, SpecStyle::Normal, pureReferenceOf(rhs), DeclSource::Reference});
        break;
      }
      case Constraint::Kind::Complement:
        break;
    }
  }

  void addSpec(SpecDecl s) {
    if (s.sub == s.super) throw ResolutionError("meaning '" + s.sub.str() + "' cannot specialize itself");
    for (const auto& e : c_.specs_) {
      if (e.sub == s.sub && e.super == s.super) return;
    }
    if (s.super.root().front() == '@') ensurePureReference(s.super);
    c_.specs_.push_back(std::move(s));
  }

  void ensurePureReference(const MeaningLabel& pure) {
    if (c_.meanings_.count(pure)) return;
    auto& m = c_.meanings_[pure];
    m.label = pure;
    m.origin = MeaningOrigin::PureReference;
  }

  void rebuildSupers() {
    c_.directSupers_.clear();
    for (const auto& s : c_.specs_) c_.directSupers_[s.sub].push_back(s.super);
  }

  // -- compounds -------------------------------------------------------------

  ResolvedMeaning& newMeaning(const MeaningLabel& l, MeaningOrigin origin, const Span& span) {
    if (c_.meanings_.count(l)) throw ResolutionError("duplicate meaning declaration '" + l.str() + "'", span);
    auto& m = c_.meanings_[l];
    m.label = l;
    m.origin = origin;
    return m;
  }

  void requireRoot(const std::string& root, const Span& span) {
    MeaningLabel l = MeaningLabel::parse(root);
    if (!l.isRoot() || !c_.meanings_.count(l)) {
      throw ResolutionError("constructor operand '" + root + "' is not a declared root meaning", span);
    }
  }

  void addComponent(const MeaningLabel& owner, const std::string& name, Scope scope, bool setOf, const Span& span) {
    MeaningLabel cl = owner.child(name);
    newMeaning(cl, MeaningOrigin::Compound, span);
    c_.meanings_[owner].components.push_back({name, cl, scope, setOf, false, std::nullopt});
  }

  std::optional<MeaningLabel> commonSuper(const MeaningLabel& a, const MeaningLabel& b) const {
    auto sa = c_.superClosure(a);
    auto sb = c_.superClosure(b);
    for (const auto& x : sa) {
      if (x == a || x == b) continue;
      if (std::find(sb.begin(), sb.end(), x) != sb.end()) return x;
    }
    return std::nullopt;
  }

  void declareCompound(const TopDecl& d) {
    const CompoundForm& f = d.compound;
    MeaningLabel label(compoundRootText(f));
    CompoundInfo info;
    info.form = f;
    info.label = label;
    requireRoot(f.left, d.span);
    info.operands.push_back(MeaningLabel(f.left));
    if (f.op != CompoundOp::Group) {
      requireRoot(f.right, d.span);
      info.operands.push_back(MeaningLabel(f.right));
    }
    auto factorName = [](const std::string& root) { return root.substr(1); };

    switch (f.op) {
      case CompoundOp::Product: {
        std::string n1 = factorName(f.left);
        std::string n2 = f.alias ? *f.alias : factorName(f.right);
        if (n1 == n2) throw ResolutionError("product factor names collide in '" + label.str() + "'; use 'as'", d.span);
        auto& m = newMeaning(label, MeaningOrigin::Compound, d.span);
        m.occurrence = LabelOcc::makeConj(LabelOcc::makeLeaf(n1), LabelOcc::makeLeaf(n2));
        addComponent(label, n1, Scope::Private, false, d.span);
        addComponent(label, n2, Scope::Private, false, d.span);
        addSpec({label.child(n1), SpecStyle::Normal, MeaningLabel(f.left), DeclSource::Compound});
        addSpec({label.child(n2), SpecStyle::Normal, MeaningLabel(f.right), DeclSource::Compound});
        info.generated = {label.child(n1), label.child(n2)};
        break;
      }
      case CompoundOp::Group: {
        std::string n = factorName(f.left);
        auto& m = newMeaning(label, MeaningOrigin::Compound, d.span);
        m.occurrence = LabelOcc::makeLeaf(n);
        addComponent(label, n, Scope::Private, true, d.span);
        addSpec({label.child(n), SpecStyle::Normal, MeaningLabel(f.left), DeclSource::Compound});
        info.generated = {label.child(n)};
        break;
      }
      case CompoundOp::Union: {
        newMeaning(label, MeaningOrigin::Compound, d.span);
        addSpec({MeaningLabel(f.left), SpecStyle::Normal, label, DeclSource::Compound});
        addSpec({MeaningLabel(f.right), SpecStyle::Normal, label, DeclSource::Compound});
        break;
      }
      case CompoundOp::Intersection: {
        MeaningLabel la(f.left), lb(f.right);
        auto anc = commonSuper(la, lb);
        if (!anc) {
          throw ResolutionError("intersection '" + label.str() + "' requires a common super meaning of its operands",
                                d.span);
        }
        info.ancestor = anc;
        newMeaning(label, MeaningOrigin::Compound, d.span);
        addSpec({label, SpecStyle::Normal, la, DeclSource::Compound});
        addSpec({label, SpecStyle::Normal, lb, DeclSource::Compound});
        const auto aComps = c_.meanings_.at(la).components;
        const auto bComps = c_.meanings_.at(lb).components;
        const auto ancComps = c_.meanings_.at(*anc).components;
        LabelOcc occ;
        for (const auto& c1 : aComps) {
          for (const auto& c2 : bComps) {
            bool shared = false;
            for (const auto& cp : ancComps) {
              if (c_.isSubMeaning(c1.label, cp.label) && c_.isSubMeaning(c2.label, cp.label)) shared = true;
            }
            if (!shared) continue;
            std::string name = c1.name + "&" + c2.name;
            addComponent(label, name, Scope::Private, true, d.span);
            addSpec({label.child(name), SpecStyle::Normal, c1.label, DeclSource::Compound});
            addSpec({label.child(name), SpecStyle::Normal, c2.label, DeclSource::Compound});
            info.generated.push_back(label.child(name));
            LabelOcc leaf = LabelOcc::makeOptional(LabelOcc::makeLeaf(name));
            occ = occ.kind == OccKind::Empty ? leaf : LabelOcc::makeConj(std::move(occ), std::move(leaf));
          }
        }
        c_.meanings_[label].occurrence = occ;
        break;
      }
      case CompoundOp::Join: {
        MeaningLabel product(f.left + "^" + f.right);
        auto pit = c_.compounds_.find(product);
        if (pit == c_.compounds_.end()) {
          throw ResolutionError("declare-to-use: product '" + product.str() + "' must be declared before its join",
                                d.span);
        }
        MeaningLabel jl = resolveLabelRef(*f.joinLeft, nullptr, c_.meanings_);
        MeaningLabel jr = resolveLabelRef(*f.joinRight, nullptr, c_.meanings_);
        if (!MeaningLabel(f.left).isAncestorOf(jl) || !MeaningLabel(f.right).isAncestorOf(jr)) {
          throw ResolutionError("join components must be components of the joined meanings", d.span);
        }
        auto anc = commonSuper(jl, jr);
        if (!anc) throw ResolutionError("join components '" + jl.str() + "' and '" + jr.str() +
                                            "' share no common ancestor meaning", d.span);
        info.ancestor = anc;
        info.joinLeft = jl;
        info.joinRight = jr;
        const auto& pm = c_.meanings_.at(product);
        std::string n1 = pm.components[0].name;
        std::string n2 = pm.components[1].name;
        auto& m = newMeaning(label, MeaningOrigin::Compound, d.span);
        m.occurrence = LabelOcc::makeConj(LabelOcc::makeConj(LabelOcc::makeLeaf(n1), LabelOcc::makeLeaf(n2)),
                                          LabelOcc::makeLeaf("joint"));
        addComponent(label, n1, Scope::Private, false, d.span);
        addComponent(label, n2, Scope::Private, false, d.span);
        addComponent(label, "joint", Scope::Private, false, d.span);
        addSpec({label, SpecStyle::Normal, product, DeclSource::Compound});
        addSpec({label.child(n1), SpecStyle::Normal, product.child(n1), DeclSource::Compound});
        addSpec({label.child(n2), SpecStyle::Normal, product.child(n2), DeclSource::Compound});
        addSpec({label.child("joint"), SpecStyle::Normal, jl, DeclSource::Compound});
        addSpec({label.child("joint"), SpecStyle::Normal, jr, DeclSource::Compound});
        info.generated = {label.child(n1), label.child(n2), label.child("joint")};
        break;
      }
    }
    c_.compounds_[label] = info;
    rebuildSupers();
  }

  void declareDerived(const DerivedDecl& d) {
    if (!d.sub.isRoot()) throw ResolutionError("derived meaning '" + d.sub.str() + "' must be a root label");
    if (!c_.meanings_.count(d.super)) throw ResolutionError("unresolved label '" + d.super.str() + "'");
    for (const auto& cond : d.conditions) {
      MeaningLabel cur = d.super;
      std::size_t start = 0;
      while (start <= cond.path.size()) {
        std::size_t end = cond.path.find('.', start);
        if (end == std::string::npos) end = cond.path.size();
        std::string seg = cond.path.substr(start, end - start);
        const auto* m = c_.find(cur);
        const ComponentInfo* ci = m ? m->component(seg) : nullptr;
        if (!ci) {
          throw ResolutionError("derived condition references unknown component '" + cond.path + "' of " +
                                d.super.str());
        }
        cur = ci->label;
        start = end + 1;
      }
    }
    newMeaning(d.sub, MeaningOrigin::Derived, {});
    addSpec({d.sub, SpecStyle::Normal, d.super, DeclSource::Derived});
    c_.derived_[d.sub] = d;
    rebuildSupers();
  }

  // @a is a sub meaning of @b whenever a is a sub meaning of b.
  void synthesizePureReferences() {
    rebuildSupers();
    std::deque<MeaningLabel> work;
    for (const auto& [l, m] : c_.meanings_) {
      if (m.origin == MeaningOrigin::PureReference) work.push_back(l);
    }
    std::set<MeaningLabel> seen(work.begin(), work.end());
    while (!work.empty()) {
      MeaningLabel pure = work.front();
      work.pop_front();
      MeaningLabel host = MeaningLabel::parse(std::string_view(pure.root()).substr(1));
      if (!c_.meanings_.count(host)) throw ResolutionError("reference to undeclared host '" + host.str() + "'");
      for (const auto& sup : c_.superClosure(host)) {
        if (sup == host) continue;
        MeaningLabel ps = pureReferenceOf(sup);
        addSpec({pure, SpecStyle::Normal, ps, DeclSource::Reference});
        if (seen.insert(ps).second) work.push_back(ps);
      }
      rebuildSupers();
    }
  }

  void checkSpecAcyclic() const {
    std::map<MeaningLabel, int> state;
    std::function<void(const MeaningLabel&)> visit = [&](const MeaningLabel& l) {
      state[l] = 1;
      auto it = c_.directSupers_.find(l);
      if (it != c_.directSupers_.end()) {
        for (const auto& s : it->second) {
          if (state[s] == 1) throw ResolutionError("specialization cycle through '" + s.str() + "'");
          if (state[s] == 0) visit(s);
        }
      }
      state[l] = 2;
    };
    for (const auto& [l, supers] : c_.directSupers_) {
      if (state[l] == 0) visit(l);
    }
    // Own composition edges always extend a label by one segment; verify anyway.
    for (const auto& [l, m] : c_.meanings_) {
      for (const auto& comp : m.components) {
        if (!comp.inherited && !l.isAncestorOf(comp.label)) {
          throw ResolutionError("composition cycle or malformed component '" + comp.label.str() + "'");
        }
      }
    }
  }

  // -- equivalence -----------------------------------------------------------

  MeaningLabel find(const MeaningLabel& l) {
    auto it = c_.equivRep_.find(l);
    if (it == c_.equivRep_.end()) {
      c_.equivRep_[l] = l;
      return l;
    }
    if (it->second == l) return l;
    MeaningLabel root = find(it->second);
    c_.equivRep_[l] = root;
    return root;
  }

  bool unite(const MeaningLabel& a, const MeaningLabel& b) {
    MeaningLabel ra = find(a), rb = find(b);
    if (ra == rb) return false;
    if (rb < ra) std::swap(ra, rb);
    c_.equivRep_[rb] = ra;
    return true;
  }

  // Components with equal local names of equivalent meanings are equivalent.
  void closeEquivalences() {
    bool changed = true;
    while (changed) {
      changed = false;
      std::map<MeaningLabel, std::vector<MeaningLabel>> classes;
      for (const auto& [l, rep] : c_.equivRep_) classes[find(l)].push_back(l);
      for (const auto& [rep, members] : classes) {
        if (members.size() < 2) continue;
        for (std::size_t i = 0; i < members.size(); ++i) {
          for (std::size_t j = i + 1; j < members.size(); ++j) {
            const auto* mi = c_.find(members[i]);
            const auto* mj = c_.find(members[j]);
            if (!mi || !mj) continue;
            for (const auto& ci : mi->components) {
              const auto* cj = mj->component(ci.name);
              if (cj && unite(ci.label, cj->label)) changed = true;
            }
          }
        }
      }
    }
  }

  // -- inheritance -----------------------------------------------------------

  MeaningLabel canonicalOrigin(MeaningLabel l) const {
    for (auto it = copiedFrom_.find(l); it != copiedFrom_.end(); it = copiedFrom_.find(l)) l = it->second;
    return l;
  }

  bool covers(const ResolvedMeaning& m, const MeaningLabel& superComp) {
    for (const auto& own : m.components) {
      if (own.inherited) continue;
      if (find(own.label) == find(superComp)) return true;
      for (const auto& s : c_.specs_) {
        if (s.source == DeclSource::Declared && find(s.sub) == find(own.label) && find(s.super) == find(superComp)) {
          return true;
        }
      }
    }
    return false;
  }

  void copySubtree(const MeaningLabel& origin, const MeaningLabel& target) {
    if (c_.meanings_.count(target)) return;
    ResolvedMeaning copy;
    copy.label = target;
    copy.origin = MeaningOrigin::Inherited;
    const ResolvedMeaning src = c_.meanings_.at(origin);
    copy.occurrence = src.occurrence;
    copy.intensive = src.intensive;
    for (const auto& comp : src.components) {
      ComponentInfo ci = comp;
      if (origin.isAncestorOf(comp.label)) {
        ci.label = target.child(comp.name);
      }
      copy.components.push_back(ci);
    }
    c_.meanings_[target] = copy;
    inheritedEquiv_.emplace_back(target, origin);
    copiedFrom_[target] = origin;
    for (const auto& comp : src.components) {
      if (origin.isAncestorOf(comp.label)) copySubtree(comp.label, target.child(comp.name));
    }
  }

  void processInheritance(const MeaningLabel& m) {
    if (inheritDone_.count(m) || inheritActive_.count(m)) return;
    inheritActive_.insert(m);
    auto it = c_.directSupers_.find(m);
    std::vector<MeaningLabel> supers = it == c_.directSupers_.end() ? std::vector<MeaningLabel>{} : it->second;
    for (const auto& s : supers) {
      processInheritance(s);
      std::vector<MeaningLabel> descendants;
      for (const auto& [l, rm] : c_.meanings_) {
        if (s.isAncestorOf(l)) descendants.push_back(l);
      }
      for (const auto& d : descendants) processInheritance(d);
    }
    applyInheritance(m, supers);
    inheritActive_.erase(m);
    inheritDone_.insert(m);
  }

  void applyInheritance(const MeaningLabel& label, const std::vector<MeaningLabel>& supers) {
    ResolvedMeaning& m = c_.meanings_.at(label);
    if (m.origin == MeaningOrigin::Inherited || supers.empty()) return;
    std::map<std::string, MeaningLabel> inheritedFrom;
    std::set<std::string> ownNames;
    for (const auto& comp : m.components) ownNames.insert(comp.name);
    std::vector<LabelOcc> parts;
    std::set<std::string> overridden;

    for (const auto& s : supers) {
      const ResolvedMeaning sm = c_.meanings_.at(s);
      bool recursive = s == label || s.isAncestorOf(label);
      std::set<std::string> keep;
      for (const auto& ci : sm.components) {
        if (ownNames.count(ci.name)) {
          overridden.insert(ci.name);
          keep.insert(ci.name);
          continue;
        }
        if (covers(m, ci.label)) continue;
        auto prev = inheritedFrom.find(ci.name);
        if (prev != inheritedFrom.end()) {
          if (!(canonicalOrigin(prev->second) == canonicalOrigin(ci.label))) {
            throw ResolutionError("inherited component name '" + ci.name + "' of '" + label.str() +
                                  "' conflicts between super meanings");
          }
          continue;
        }
        inheritedFrom.emplace(ci.name, ci.label);
        keep.insert(ci.name);
        ComponentInfo entry = ci;
        entry.inherited = true;
        entry.origin = ci.label;
        if (!recursive) {
          entry.label = label.child(ci.name);
          copySubtree(ci.label, entry.label);
        }
        c_.meanings_.at(label).components.push_back(entry);
      }
      parts.push_back(mapLeaves<std::string>(sm.occurrence, [&](const std::string& n) {
        return keep.count(n) && !overridden.count(n) ? std::optional<std::string>(n) : std::nullopt;
      }));
    }
    ResolvedMeaning& mm = c_.meanings_.at(label);
    for (const auto& n : overridden) mm.overrides.push_back(n);
    LabelOcc occ;
    for (auto& p : parts) {
      if (p.kind == OccKind::Empty) continue;
      occ = occ.kind == OccKind::Empty ? std::move(p) : LabelOcc::makeConj(std::move(occ), std::move(p));
    }
    if (mm.occurrence.kind != OccKind::Empty) {
      occ = occ.kind == OccKind::Empty ? mm.occurrence : LabelOcc::makeConj(std::move(occ), mm.occurrence);
    }
    mm.occurrence = simplifyEmpty(std::move(occ));
  }

  // -- complements -----------------------------------------------------------

  ResolvedAtom resolveAtom(const PatternAtom& a, const MeaningLabel& context, const MeaningLabel* parentAtom) {
    ResolvedAtom r;
    r.var = a.var;
    r.link = a.link;
    r.linkedVar = a.linkedVar;
    if (parentAtom && a.label.form == LabelForm::Local) {
      MeaningLabel direct = *parentAtom;
      for (const auto& s : a.label.segments) direct = direct.child(s);
      const auto* pm = c_.find(*parentAtom);
      if (c_.meanings_.count(direct)) {
        r.label = direct;
      } else if (pm && a.label.segments.size() == 1 && pm->component(a.label.segments[0])) {
        r.label = pm->component(a.label.segments[0])->label;
      } else {
        r.label = resolveLabelRef(a.label, parentAtom, c_.meanings_);
      }
    } else {
      r.label = resolveLabelRef(a.label, parentAtom ? parentAtom : &context, c_.meanings_);
    }
    for (const auto& ch : a.children) r.children.push_back(resolveAtom(ch, context, &r.label));
    return r;
  }

  void resolveComplements() {
    std::size_t index = 0;
    for (const auto& [owner, k] : complementsSrc_) {
      ComplementRule rule;
      rule.index = index++;
      rule.owner = owner;
      rule.source = k;
      rule.vars = analyzeComplement(k);
      for (const auto& a : k.head) rule.head.push_back(resolveAtom(a, owner, nullptr));
      for (const auto& a : k.body) rule.body.push_back(resolveAtom(a, owner, nullptr));
      c_.complements_.push_back(std::move(rule));
    }
  }

  Catalog c_;
  std::vector<Pending> pending_;
  std::vector<Pending> deferred_;
  std::vector<std::pair<MeaningLabel, Constraint>> complementsSrc_;
  std::vector<std::pair<MeaningLabel, MeaningLabel>> equivPairs_;
  std::vector<std::pair<MeaningLabel, MeaningLabel>> inheritedEquiv_;
  std::vector<MeaningLabel> referenceHosts_;
  std::map<MeaningLabel, MeaningLabel> copiedFrom_;
  std::set<MeaningLabel> inheritDone_;
  std::set<MeaningLabel> inheritActive_;
};

// ---------------------------------------------------------------------------

Catalog Catalog::resolve(const SourceSchema& schema, std::vector<DerivedDecl> derived) {
  return CatalogBuilder(schema, std::move(derived)).build();
}

const ResolvedMeaning* Catalog::find(const MeaningLabel& l) const {
  auto it = meanings_.find(l);
  return it == meanings_.end() ? nullptr : &it->second;
}

const ResolvedMeaning& Catalog::at(const MeaningLabel& l) const {
  const auto* m = find(l);
  if (!m) throw ResolutionError("unknown meaning '" + l.str() + "'");
  return *m;
}

bool Catalog::equivalent(const MeaningLabel& a, const MeaningLabel& b) const {
  if (a == b) return true;
  auto ia = equivRep_.find(a);
  auto ib = equivRep_.find(b);
  return ia != equivRep_.end() && ib != equivRep_.end() && ia->second == ib->second;
}

std::vector<MeaningLabel> Catalog::equivalenceClass(const MeaningLabel& l) const {
  auto it = equivRep_.find(l);
  if (it == equivRep_.end()) return {l};
  std::vector<MeaningLabel> out;
  for (const auto& [m, rep] : equivRep_) {
    if (rep == it->second) out.push_back(m);
  }
  return out;
}

std::vector<std::pair<MeaningLabel, MeaningLabel>> Catalog::equivalencePairs() const {
  std::vector<std::pair<MeaningLabel, MeaningLabel>> out;
  std::map<MeaningLabel, std::vector<MeaningLabel>> classes;
  for (const auto& [m, rep] : equivRep_) classes[rep].push_back(m);
  for (const auto& [rep, members] : classes) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) out.emplace_back(members[i], members[j]);
    }
  }
  return out;
}

std::vector<MeaningLabel> Catalog::superClosure(const MeaningLabel& l) const {
  std::vector<MeaningLabel> out{l};
  std::set<MeaningLabel> seen{l};
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto it = directSupers_.find(out[i]);
    if (it == directSupers_.end()) continue;
    std::vector<MeaningLabel> next;
    for (const auto& s : it->second) {
      if (seen.insert(s).second) next.push_back(s);
    }
    out.insert(out.end(), next.begin(), next.end());
  }
  return out;
}

bool Catalog::isSubMeaning(const MeaningLabel& sub, const MeaningLabel& super) const {
  // BFS over (label, usedSpecialization) where equivalence moves are free.
  std::set<std::pair<MeaningLabel, bool>> seen;
  std::deque<std::pair<MeaningLabel, bool>> work;
  for (const auto& e : equivalenceClass(sub)) {
    if (seen.insert({e, false}).second) work.emplace_back(e, false);
  }
  while (!work.empty()) {
    auto [l, used] = work.front();
    work.pop_front();
    if (used && equivalent(l, super)) return true;
    auto it = directSupers_.find(l);
    if (it == directSupers_.end()) continue;
    for (const auto& s : it->second) {
      for (const auto& e : equivalenceClass(s)) {
        if (seen.insert({e, true}).second) work.emplace_back(e, true);
      }
    }
  }
  return false;
}

std::optional<SpecStyle> Catalog::styleBetween(const MeaningLabel& sub, const MeaningLabel& super) const {
  if (!isSubMeaning(sub, super)) return std::nullopt;
  for (const auto& s : specs_) {
    if (equivalent(s.sub, sub) && equivalent(s.super, super)) return s.style;
  }
  return SpecStyle::Normal;
}

std::map<MeaningLabel, MeaningLabel> Catalog::componentMap(const MeaningLabel& sub, const MeaningLabel& super) const {
  const auto& sm = at(sub);
  const auto& pm = at(super);
  bool declaredSub = isSubMeaning(sub, super);
  std::map<MeaningLabel, MeaningLabel> out;
  for (const auto& c : sm.components) {
    if (c.inherited && c.origin) {
      if (const auto* target = pm.componentByLabel(*c.origin)) {
        out[c.label] = target->label;
        continue;
      }
    }
    std::vector<MeaningLabel> candidates;
    for (const auto& s : pm.components) {
      bool override = declaredSub && c.name == s.name;
      if (override || equivalent(c.label, s.label) || isSubMeaning(c.label, s.label)) candidates.push_back(s.label);
    }
    if (candidates.empty()) continue;
    if (candidates.size() > 1) {
      std::vector<MeaningLabel> direct;
      for (const auto& cand : candidates) {
        bool isDirect = equivalent(c.label, cand);
        for (const auto& sp : specs_) {
          if (equivalent(sp.sub, c.label) && equivalent(sp.super, cand)) isDirect = true;
        }
        if (isDirect) direct.push_back(cand);
      }
      if (direct.size() != 1) {
        throw ResolutionError("ambiguous component mapping for '" + c.label.str() + "' into '" + super.str() + "'");
      }
      candidates = direct;
    }
    out[c.label] = candidates.front();
  }
  return out;
}

std::vector<std::pair<MeaningLabel, MeaningLabel>> Catalog::componentSpecializations(const MeaningLabel& l) const {
  std::set<std::pair<MeaningLabel, MeaningLabel>> out;
  for (const auto& s : specs_) {
    if (s.source != DeclSource::Declared || !l.isAncestorOf(s.sub)) continue;
    auto superParent = s.super.parent();
    auto subParent = s.sub.parent();
    if (superParent && subParent) {
      auto closure = superClosure(*subParent);
      if (std::find(closure.begin(), closure.end(), *superParent) != closure.end()) continue;
    }
    out.emplace(s.sub, s.super);
  }
  return {out.begin(), out.end()};
}

bool Catalog::isStructural(const MeaningLabel& l) const {
  std::optional<MeaningLabel> cur = l;
  while (cur) {
    if (intensives_.count(*cur)) return true;
    cur = cur->parent();
  }
  for (const auto& i : intensives_) {
    if (isSubMeaning(l, i)) return true;
  }
  return false;
}

const ReferenceDecl* Catalog::referenceOf(const MeaningLabel& l) const {
  auto it = references_.find(l);
  if (it != references_.end()) return &it->second;
  for (const auto& e : equivalenceClass(l)) {
    auto jt = references_.find(e);
    if (jt != references_.end()) return &jt->second;
  }
  return nullptr;
}

const ComponentInfo* Catalog::componentEntry(const MeaningLabel& parent, const MeaningLabel& child) const {
  const auto* m = find(parent);
  if (!m) return nullptr;
  if (const auto* c = m->componentByLabel(child)) return c;
  for (const auto& c : m->components) {
    if (equivalent(c.label, child)) return &c;
  }
  return nullptr;
}

namespace {
const char* sourceName(DeclSource s) {
  switch (s) {
    case DeclSource::Declared: return "declared";
    case DeclSource::Reference: return "reference";
    case DeclSource::Compound: return "compound";
    case DeclSource::Derived: return "derived";
  }
  return "declared";
}

const char* opName(CompoundOp op) {
  switch (op) {
    case CompoundOp::Product: return "product";
    case CompoundOp::Group: return "group";
    case CompoundOp::Union: return "union";
    case CompoundOp::Intersection: return "intersection";
    case CompoundOp::Join: return "join";
  }
  return "product";
}
}  // namespace

std::string Catalog::dump() const {
  std::vector<std::string> lines;
  for (const auto& [l, m] : meanings_) {
    std::string line = "meaning\t" + l.str() + "\t" + to_string(m.origin) + "\t{" + printLabelOcc(m.occurrence) + "}";
    if (m.intensive) line += "\tintensive";
    if (m.value) line += "\tvalue";
    lines.push_back(line);
    for (const auto& c : m.components) {
      std::string cl = "component\t" + l.str() + "\t" + c.name + "\t" + c.label.str() + "\t" + to_string(c.scope) +
                       (c.setOf ? "\tset" : "\tsingle");
      if (c.inherited) cl += "\tinherited-from=" + c.origin->str();
      lines.push_back(cl);
    }
  }
  for (const auto& s : specs_) {
    lines.push_back("spec\t" + s.sub.str() + "\t" + specSymbol(s.style) + "\t" + s.super.str() + "\t" +
                    sourceName(s.source));
  }
  for (const auto& [a, b] : equivalencePairs()) lines.push_back("equiv\t" + a.str() + "\t" + b.str());
  for (const auto& [l, r] : references_) {
    lines.push_back("ref\t" + r.ref.str() + "\t" + r.host.str() + "\t" + (r.scope ? r.scope->str() : "-"));
  }
  for (const auto& rule : complements_) {
    lines.push_back("complement\t" + rule.owner.str() + "\t" + std::to_string(rule.index) + "\t" +
                    printConstraint(rule.source));
  }
  for (const auto& [l, info] : compounds_) {
    std::string line = std::string("compound\t") + l.str() + "\t" + opName(info.form.op);
    if (info.ancestor) line += "\tancestor=" + info.ancestor->str();
    lines.push_back(line);
  }
  for (const auto& [l, d] : derived_) {
    lines.push_back("derived\t" + d.sub.str() + "\t" + d.super.str() + "\t" + std::to_string(d.conditions.size()));
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& line : lines) out += line + "\n";
  return out;
}

}  // namespace semgraph
