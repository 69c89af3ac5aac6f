#include "semgraph/compound.hpp"

#include <algorithm>

#include "graph_rules.hpp"
#include "semgraph/parser.hpp"

namespace semgraph {

using detail::sameMeaning;

Catalog declareCompound(const Catalog& cat, std::string_view declText) {
  SourceSchema add = parseSchema(declText);
  SourceSchema src = cat.source();
  for (const auto& d : add.declarations) {
    if (d.kind != TopDecl::Kind::Compound) throw ResolutionError("not a compound declaration: " + printTopDecl(d));
    for (const auto& e : src.declarations) {
      if (e.kind == TopDecl::Kind::Compound && e.compound == d.compound) {
        throw ResolutionError("duplicate compound declaration " + compoundRootText(d.compound));
      }
    }
    src.declarations.push_back(d);
  }
  return Catalog::resolve(src, cat.derivedDecls());
}

Catalog declareDerived(const Catalog& cat, DerivedDecl decl) {
  auto all = cat.derivedDecls();
  for (const auto& d : all) {
    if (d.sub == decl.sub) throw ResolutionError("duplicate derived meaning " + decl.sub.str());
  }
  all.push_back(std::move(decl));
  return Catalog::resolve(cat.source(), all);
}

DerivedCondition parseDerivedCondition(std::string_view text) {
  static const std::pair<const char*, DerivedCondition::Op> ops[] = {
      {"==", DerivedCondition::Op::Eq}, {"!=", DerivedCondition::Op::Ne}, {"<=", DerivedCondition::Op::Le},
      {">=", DerivedCondition::Op::Ge}, {"<", DerivedCondition::Op::Lt},  {">", DerivedCondition::Op::Gt}};
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return std::string(s);
  };
  for (const auto& [tok, op] : ops) {
    auto pos = text.find(tok);
    if (pos == std::string_view::npos) continue;
    DerivedCondition c{trim(text.substr(0, pos)), op, trim(text.substr(pos + std::string_view(tok).size()))};
    if (c.path.empty() || c.literal.empty()) break;
    return c;
  }
  throw ResolutionError("malformed derived condition '" + std::string(text) + "'");
}

namespace {

const CompoundInfo& compoundOf(const Catalog& cat, const MeaningLabel& label, CompoundOp op) {
  auto it = cat.compounds().find(label);
  if (it == cat.compounds().end() || it->second.form.op != op) {
    throw GraphError("declare-to-use", label.str() + " is not a declared " +
                                           (op == CompoundOp::Join ? "join" : "intersection") + " meaning");
  }
  return it->second;
}

std::vector<std::string> withMeaning(const MeaningGraph& g, const Catalog& cat, const std::vector<std::string>& ids,
                                     const MeaningLabel& l) {
  std::vector<std::string> out;
  for (const auto& id : ids) {
    if (sameMeaning(cat, g.at(id).label, l)) out.push_back(id);
  }
  return out;
}

bool shareSuper(const MeaningGraph& g, const Catalog& cat, const std::string& u, const std::string& v,
                const std::optional<MeaningLabel>& ancestor) {
  auto a = detail::superClosure(g, u);
  for (const auto& s : detail::superClosure(g, v)) {
    if (s == u || s == v || !a.count(s)) continue;
    if (!ancestor) return true;
    const MeaningLabel& l = g.at(s).label;
    if (sameMeaning(cat, l, *ancestor) || cat.isSubMeaning(l, *ancestor)) return true;
  }
  return false;
}

SpecStyle styleOf(const Catalog& cat, const MeaningLabel& sub, const MeaningLabel& super) {
  return cat.styleBetween(sub, super).value_or(SpecStyle::Normal);
}

// Creates `id` if missing; reports whether it was new.
bool ensureNode(MeaningGraph& g, const std::string& id, const MeaningLabel& l, std::vector<std::string>& created) {
  if (g.hasNode(id)) return false;
  g.insertNode(Node{id, l, std::nullopt});
  created.push_back(id);
  return true;
}

// The sub-node holds the super-node's component nodes that its meaning also has.
void inheritChildren(MeaningGraph& g, const Catalog& cat, const std::string& sub, const std::string& super) {
  const MeaningLabel& l = g.at(sub).label;
  for (const auto& c : g.children(super)) {
    if (cat.componentEntry(l, g.at(c).label)) g.insertEdge(Edge{EdgeKind::Composition, sub, c});
  }
}

std::vector<std::string> nodesAt(const MeaningGraph& g, const Catalog& cat, const std::string& from,
                                 const MeaningLabel& root, const MeaningLabel& target) {
  std::vector<std::string> cur{from};
  MeaningLabel l = root;
  for (std::size_t i = root.path().size(); i < target.path().size(); ++i) {
    l = l.child(target.path()[i]);
    std::vector<std::string> next;
    for (const auto& n : cur) {
      auto kids = withMeaning(g, cat, g.children(n), l);
      next.insert(next.end(), kids.begin(), kids.end());
    }
    cur = std::move(next);
  }
  return cur;
}

std::optional<std::pair<std::string, std::string>> jointMatch(const MeaningGraph& g, const Catalog& cat,
                                                              const CompoundInfo& info, const std::string& a,
                                                              const std::string& b) {
  auto us = nodesAt(g, cat, a, info.operands[0], *info.joinLeft);
  auto vs = nodesAt(g, cat, b, info.operands[1], *info.joinRight);
  std::sort(us.begin(), us.end());
  std::sort(vs.begin(), vs.end());
  for (const auto& u : us) {
    for (const auto& v : vs) {
      if (shareSuper(g, cat, u, v, info.ancestor)) return std::make_pair(u, v);
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<std::string> materializeIntersection(MeaningGraph& g, const Catalog& cat, const MeaningLabel& label) {
  const CompoundInfo& info = compoundOf(cat, label, CompoundOp::Intersection);
  const MeaningLabel& la = info.operands[0];
  const MeaningLabel& lb = info.operands[1];
  // generated component -> (component of la, component of lb)
  std::vector<std::tuple<MeaningLabel, MeaningLabel, MeaningLabel>> gen;
  for (const auto& gl : info.generated) {
    std::optional<MeaningLabel> l1, l2;
    for (const auto& s : cat.specializations()) {
      if (!(s.sub == gl)) continue;
      if (s.super.root() == la.root()) l1 = s.super;
      if (s.super.root() == lb.root()) l2 = s.super;
    }
    if (l1 && l2) gen.emplace_back(gl, *l1, *l2);
  }
  std::vector<std::string> created;
  std::vector<std::string> all;
  for (const auto& [id, n] : g.nodes()) all.push_back(id);
  for (const auto& o : withMeaning(g, cat, all, *info.ancestor)) {
    auto subs = g.subs(o);
    for (const auto& a : withMeaning(g, cat, subs, la)) {
      for (const auto& b : withMeaning(g, cat, subs, lb)) {
        std::string x = "~in_" + a + "_" + b;
        ensureNode(g, x, label, created);
        g.insertEdge(Edge{EdgeKind::Specialization, a, x, styleOf(cat, label, la)});
        g.insertEdge(Edge{EdgeKind::Specialization, b, x, styleOf(cat, label, lb)});
        inheritChildren(g, cat, x, a);
        inheritChildren(g, cat, x, b);
        for (const auto& [gl, l1, l2] : gen) {
          for (const auto& t : withMeaning(g, cat, g.children(a), l1)) {
            for (const auto& r : withMeaning(g, cat, g.children(b), l2)) {
              if (!shareSuper(g, cat, t, r, std::nullopt)) continue;
              std::string y = "~in_" + t + "_" + r;
              ensureNode(g, y, gl, created);
              g.insertEdge(Edge{EdgeKind::Composition, x, y});
              g.insertEdge(Edge{EdgeKind::Specialization, t, y, styleOf(cat, gl, l1)});
              g.insertEdge(Edge{EdgeKind::Specialization, r, y, styleOf(cat, gl, l2)});
            }
          }
        }
      }
    }
  }
  return created;
}

std::vector<std::pair<std::string, std::string>> joinPairs(const MeaningGraph& g, const Catalog& cat,
                                                           const MeaningLabel& label) {
  const CompoundInfo& info = compoundOf(cat, label, CompoundOp::Join);
  std::vector<std::string> all;
  for (const auto& [id, n] : g.nodes()) all.push_back(id);
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& a : withMeaning(g, cat, all, info.operands[0])) {
    for (const auto& b : withMeaning(g, cat, all, info.operands[1])) {
      if (jointMatch(g, cat, info, a, b)) out.emplace_back(a, b);
    }
  }
  return out;
}

std::vector<std::string> materializeJoin(MeaningGraph& g, const Catalog& cat, const MeaningLabel& label) {
  const CompoundInfo& info = compoundOf(cat, label, CompoundOp::Join);
  const ResolvedMeaning& jm = cat.at(label);
  auto pairs = joinPairs(g, cat, label);
  std::set<std::string> keep;
  for (const auto& [a, b] : pairs) keep.insert("~jn_" + a + "_" + b);
  for (const auto& id : g.withLabel(label)) {
    if (!keep.count(id)) deleteNode(g, cat, id, true);
  }
  std::vector<std::string> created;
  for (const auto& [a, b] : pairs) {
    std::string j = "~jn_" + a + "_" + b;
    if (!ensureNode(g, j, label, created)) continue;
    auto [u, v] = *jointMatch(g, cat, info, a, b);
    std::string factors[2] = {a, b};
    for (std::size_t i = 0; i < 2; ++i) {
      const ComponentInfo& c = jm.components.at(i);
      std::string f = j + "." + c.name;
      ensureNode(g, f, c.label, created);
      g.insertEdge(Edge{EdgeKind::Composition, j, f});
      g.insertEdge(Edge{EdgeKind::Specialization, factors[i], f, styleOf(cat, c.label, info.operands[i])});
      inheritChildren(g, cat, f, factors[i]);
    }
    const ComponentInfo* joint = jm.component("joint");
    std::string jt = j + ".joint";
    ensureNode(g, jt, joint->label, created);
    g.insertEdge(Edge{EdgeKind::Composition, j, jt});
    g.insertEdge(Edge{EdgeKind::Specialization, u, jt, styleOf(cat, joint->label, *info.joinLeft)});
    g.insertEdge(Edge{EdgeKind::Specialization, v, jt, styleOf(cat, joint->label, *info.joinRight)});
    inheritChildren(g, cat, jt, u);
  }
  return created;
}

SpecializeResult applySpecialize(const Catalog& cat, const MeaningGraph& g, std::string_view stmtText,
                                 std::size_t bound) {
  SourceSchema s = parseSchema(stmtText);
  if (s.declarations.size() != 1 || s.declarations[0].kind != TopDecl::Kind::Specialize) {
    throw ResolutionError("expected exactly one specialize statement");
  }
  return applySpecialize(cat, g, s.declarations[0], bound);
}

SpecializeResult applySpecialize(const Catalog& cat, const MeaningGraph& g, const TopDecl& stmt, std::size_t bound) {
  if (stmt.kind != TopDecl::Kind::Specialize) throw ResolutionError("expected a specialize statement");
  SpecializeResult res;
  SourceSchema src = cat.source();
  std::string text = printTopDecl(stmt);
  res.statement = src.declarations.size();
  for (std::size_t i = 0; i < src.declarations.size(); ++i) {
    if (src.declarations[i].kind == TopDecl::Kind::Specialize && printTopDecl(src.declarations[i]) == text) {
      res.statement = i;
    }
  }
  if (res.statement == src.declarations.size()) src.declarations.push_back(stmt);
  res.catalog = Catalog::resolve(src, cat.derivedDecls());
  const Catalog& next = res.catalog;

  MeaningLabel subL = resolveLabelRef(stmt.sub, nullptr, next.meanings());
  MeaningLabel superL = resolveLabelRef(stmt.super, nullptr, next.meanings());

  // Declarations the statement introduced: the root pair and its nested component pairs.
  std::vector<SpecDecl> added;
  for (const auto& d : next.specializations()) {
    if (d.source != DeclSource::Declared) continue;
    bool top = d.sub == subL && d.super == superL;
    bool nested = d.sub.parent() && d.super.parent() && *d.sub.parent() == subL && *d.super.parent() == superL;
    if (top || nested) added.push_back(d);
  }
  for (const auto& d : added) {
    auto rep = checkOccConsistency(d.sub, d.super, next);
    bool bad = rep.verdict == Verdict::Inconsistent;
    res.consistency.push_back(std::move(rep));
    if (bad) {
      throw SpecializeRejected("specialization " + d.sub.str() + " of " + d.super.str() +
                               " is not occurrence consistent: " + res.consistency.back().detail);
    }
  }
  for (const auto& l : {subL, superL}) {
    auto rep = checkCompleteness(next, l, bound);
    bool bad = rep.verdict == Completeness::Incomplete;
    res.completeness.push_back(std::move(rep));
    if (bad) throw SpecializeRejected("specification of " + l.str() + " is incomplete");
  }

  res.graph = g;
  MeaningGraph& h = res.graph;
  std::string prefix = "~sp_" + std::to_string(res.statement) + "_";
  // Existing super-node of `id` with meaning `l`, or a fresh one.
  auto superOf = [&](const std::string& id, const MeaningLabel& l, SpecStyle st) {
    for (const auto& s : h.supers(id)) {
      if (sameMeaning(next, h.at(s).label, l)) return s;
    }
    std::string s = prefix + id;
    ensureNode(h, s, l, res.created);
    h.insertEdge(Edge{EdgeKind::Specialization, s, id, st});
    return s;
  };
  std::vector<std::pair<std::string, std::string>> componentSupers;  // (sub component, super component)
  for (const auto& n : g.withLabel(subL)) {
    std::string top = superOf(n, superL, stmt.style);
    for (const auto& d : added) {
      if (d.sub == subL) continue;
      for (const auto& k : withMeaning(h, next, h.children(n), d.sub)) {
        bool fresh = !h.hasNode(prefix + k);
        std::string ks = superOf(k, d.super, d.style);
        if (fresh && ks == prefix + k) h.insertEdge(Edge{EdgeKind::Composition, top, ks});
        componentSupers.emplace_back(k, ks);
      }
    }
  }
  for (const auto& [k, ks] : componentSupers) {
    const ReferenceDecl* ref = next.referenceOf(h.at(ks).label);
    auto host = h.host(k);
    if (!ref || !host || h.host(ks)) continue;
    for (const auto& s : h.supers(*host)) {
      if (detail::hostLabelOk(next, *ref, h.at(s).label)) {
        h.insertEdge(Edge{EdgeKind::Reference, ks, s});
        break;
      }
    }
  }
  return res;
}

}  // namespace semgraph
