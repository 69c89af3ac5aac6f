#include <algorithm>

#include "graph_rules.hpp"

namespace semgraph {

using detail::sameMeaning;

void addNode(MeaningGraph& g, const Catalog& cat, const std::string& id, const MeaningLabel& label) {
  if (!cat.contains(label)) {
    std::string rule = detail::unknownLabelRule(label);
    throw GraphError(rule, rule == "declare-to-use"
                               ? "declare-to-use violation: compound meaning '" + label.str() + "' is not declared"
                               : "unknown meaning '" + label.str() + "'");
  }
  g.insertNode(Node{id, label, std::nullopt});
}

std::string addValueNode(MeaningGraph& g, const Catalog& cat, const MeaningLabel& label, const std::string& value) {
  if (!cat.contains(label)) throw GraphError(detail::unknownLabelRule(label), "unknown meaning '" + label.str() + "'");
  std::string id = valueNodeId(label, value);
  g.insertNode(Node{id, label, value});
  return id;
}

namespace {

const Node& endpoint(const MeaningGraph& g, const std::string& id) {
  const Node* n = g.node(id);
  if (!n) throw GraphError("dangling-edge", "edge endpoint '" + id + "' does not exist");
  return *n;
}

void checkComposition(const MeaningGraph& g, const Catalog& cat, const Node& parent, const Node& child) {
  const ComponentInfo* entry = cat.componentEntry(parent.label, child.label);
  if (!entry) {
    throw GraphError("composition-label", child.id + ":" + child.label.str() + " is not a component of " +
                                              parent.id + ":" + parent.label.str());
  }
  if (entry->scope == Scope::Private) {
    for (const auto& p : g.parents(child.id)) {
      if (p == parent.id) continue;
      const ComponentInfo* other = cat.componentEntry(g.at(p).label, child.label);
      if (other && other->scope == Scope::Private) {
        throw GraphError("private-sharing", "private component " + child.id + " already belongs to " + p);
      }
    }
  }
  if (!entry->setOf) {
    for (const auto& c : g.children(parent.id)) {
      if (c == child.id) continue;
      const ComponentInfo* other = cat.componentEntry(parent.label, g.at(c).label);
      if (other && other->name == entry->name) {
        throw GraphError("multiplicity", parent.id + " already has a '" + entry->name + "' component");
      }
    }
  }
  if (entry->scope == Scope::Static) {
    for (const auto& id : g.withLabel(child.label)) {
      if (id != child.id) throw GraphError("static-sharing", "static component " + child.label.str() + " is " + id);
    }
  }
  if (detail::compositionReaches(g, child.id, parent.id)) {
    throw GraphError("composition-cycle", "composition " + parent.id + " -> " + child.id + " closes a cycle");
  }
}

void checkSpecialization(const MeaningGraph& g, const Catalog& cat, const Node& super, const Node& sub,
                         SpecStyle style) {
  if (!cat.isSubMeaning(sub.label, super.label)) {
    throw GraphError("spec-label", sub.label.str() + " is not a sub meaning of " + super.label.str());
  }
  if (style == SpecStyle::Normal) return;
  for (const auto& other : g.subs(super.id)) {
    if (other == sub.id) continue;
    if (sameMeaning(cat, g.at(other).label, sub.label)) {
      throw GraphError("style-cardinality", "super-node " + super.id + " already has sub-node " + other + " of " +
                                                sub.label.str() + " (" + specSymbol(style) + ")");
    }
  }
}

void checkReference(const MeaningGraph& g, const Catalog& cat, const Node& ref, const Node& host) {
  const ReferenceDecl* decl = cat.referenceOf(ref.label);
  if (!decl) throw GraphError("reference-label", ref.label.str() + " is not a reference meaning");
  if (!detail::hostLabelOk(cat, *decl, host.label)) {
    throw GraphError("reference-label", host.id + ":" + host.label.str() + " cannot host " + ref.label.str());
  }
  if (decl->scope) {
    auto a = detail::scopeAncestors(g, cat, ref.id, *decl->scope);
    auto b = detail::scopeAncestors(g, cat, host.id, *decl->scope);
    bool shared = std::any_of(a.begin(), a.end(), [&](const std::string& x) { return b.count(x) > 0; });
    if (!shared) {
      throw GraphError("reference-scope",
                       "host " + host.id + " is outside the " + decl->scope->str() + " instance of " + ref.id);
    }
  }
}

}  // namespace

void addEdge(MeaningGraph& g, const Catalog& cat, Edge e) {
  const Node& from = endpoint(g, e.from);
  const Node& to = endpoint(g, e.to);
  switch (e.kind) {
    case EdgeKind::Composition:
      checkComposition(g, cat, from, to);
      break;
    case EdgeKind::Specialization: {
      auto style = cat.styleBetween(to.label, from.label);
      e.style = style ? *style : SpecStyle::Normal;
      checkSpecialization(g, cat, from, to, e.style);
      break;
    }
    case EdgeKind::Reference:
      checkReference(g, cat, from, to);
      for (const auto& old : g.outgoing(from.id)) {
        if (old.kind == EdgeKind::Reference) g.removeEdge(old);
      }
      break;
    case EdgeKind::Equivalence:
      if (!(sameMeaning(cat, from.label, to.label) || from.label == to.label)) {
        throw GraphError("equivalence-label", from.label.str() + " and " + to.label.str() + " are not equivalent");
      }
      break;
  }
  g.insertEdge(std::move(e));
}

std::vector<std::string> deleteNode(MeaningGraph& g, const Catalog& cat, const std::string& id, bool force) {
  if (!g.hasNode(id)) {
    if (force) return {};
    throw GraphError("unknown-node", "no node with id '" + id + "'");
  }
  // Least fixpoint: `<=!` supers of deleted nodes go, taking their other
  // subs with them; composition children go once every parent is gone.
  std::set<std::string> removed{id};
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::string> add;
    for (const auto& x : removed) {
      const Node& n = g.at(x);
      for (const auto& s : g.supers(x)) {
        if (cat.styleBetween(n.label, g.at(s).label) != SpecStyle::SuperRestricted) continue;
        add.push_back(s);
        for (const auto& other : g.subs(s)) add.push_back(other);
      }
      for (const auto& c : g.children(x)) {
        auto ps = g.parents(c);
        if (std::all_of(ps.begin(), ps.end(), [&](const std::string& p) { return removed.count(p) > 0; })) {
          add.push_back(c);
        }
      }
    }
    for (const auto& a : add) changed = removed.insert(a).second || changed;
  }
  for (const auto& x : removed) g.removeNode(x);
  return {removed.begin(), removed.end()};
}

}  // namespace semgraph
