#include <algorithm>

#include "graph_rules.hpp"

namespace semgraph {

namespace {

std::set<MeaningLabel> staticLabels(const Catalog& cat) {
  std::set<MeaningLabel> out;
  for (const auto& [l, m] : cat.meanings()) {
    for (const auto& c : m.components) {
      if (c.scope == Scope::Static) out.insert(c.label);
    }
  }
  return out;
}

std::string componentName(const MeaningGraph& g, const Catalog& cat, const std::string& parent,
                          const std::string& child) {
  const Node& p = g.at(parent);
  const Node& c = g.at(child);
  if (cat.contains(p.label)) {
    if (const ComponentInfo* e = cat.componentEntry(p.label, c.label)) return e->name;
  }
  return c.label.str();
}

std::map<std::string, std::size_t> refine(const MeaningGraph& g, const Catalog& cat) {
  auto statics = staticLabels(cat);
  std::map<std::string, std::size_t> cls;
  {
    std::map<std::string, std::size_t> keys;
    for (const auto& [id, n] : g.nodes()) {
      std::string key;
      bool structural = cat.contains(n.label) && cat.isStructural(n.label) && !statics.count(n.label);
      if (n.value) {
        key = "V|" + n.label.str() + "|" + *n.value;
      } else if (structural) {
        key = "S|" + n.label.str();
      } else {
        key = "I|" + id;
      }
      cls[id] = keys.emplace(key, keys.size()).first->second;
    }
  }
  std::size_t count = 0;
  for (;;) {
    std::map<std::pair<std::size_t, std::vector<std::pair<std::string, std::size_t>>>, std::size_t> sigs;
    std::map<std::string, std::size_t> next;
    for (const auto& [id, n] : g.nodes()) {
      std::vector<std::pair<std::string, std::size_t>> kids;
      for (const auto& c : g.children(id)) {
        if (g.hasNode(c)) kids.emplace_back(componentName(g, cat, id, c), cls.at(c));
      }
      std::sort(kids.begin(), kids.end());
      auto key = std::make_pair(cls.at(id), std::move(kids));
      next[id] = sigs.emplace(std::move(key), sigs.size()).first->second;
    }
    if (sigs.size() == count) return next;
    count = sigs.size();
    cls = std::move(next);
  }
}

}  // namespace

std::vector<std::vector<std::string>> intensiveClasses(const MeaningGraph& g, const Catalog& cat) {
  std::map<std::size_t, std::vector<std::string>> groups;
  for (const auto& [id, c] : refine(g, cat)) groups[c].push_back(id);
  std::vector<std::vector<std::string>> out;
  for (auto& [c, ids] : groups) out.push_back(std::move(ids));
  std::sort(out.begin(), out.end());
  return out;
}

bool intensiveEq(const MeaningGraph& g, const Catalog& cat, const std::string& a, const std::string& b) {
  const Node& na = g.at(a);
  const Node& nb = g.at(b);
  if (!(na.label == nb.label)) {
    throw GraphError("intensive-eq", "nodes " + a + " and " + b + " have different meanings");
  }
  if (!cat.contains(na.label) || !cat.isStructural(na.label)) {
    throw GraphError("intensive-eq", na.label.str() + " is not an intensive meaning");
  }
  if (a == b) return true;
  auto cls = refine(g, cat);
  return cls.at(a) == cls.at(b);
}

namespace {

void redirect(MeaningGraph& g, const std::string& keep, const std::string& drop) {
  std::vector<Edge> incident = g.outgoing(drop);
  auto in = g.incoming(drop);
  incident.insert(incident.end(), in.begin(), in.end());
  for (const auto& e : incident) {
    Edge n = e;
    if (n.from == drop) n.from = keep;
    if (n.to == drop) n.to = keep;
    if (n.from == n.to) continue;
    g.insertEdge(n);
  }
  g.removeNode(drop);
}

// Merges drop into keep, then folds duplicate equivalent children.
void mergeInto(MeaningGraph& g, const Catalog& cat, const std::string& keep, const std::string& drop) {
  redirect(g, keep, drop);
  for (;;) {
    auto cls = refine(g, cat);
    std::map<std::pair<std::string, std::size_t>, std::vector<std::string>> byKey;
    for (const auto& c : g.children(keep)) byKey[{componentName(g, cat, keep, c), cls.at(c)}].push_back(c);
    bool merged = false;
    for (auto& [k, ids] : byKey) {
      if (ids.size() < 2) continue;
      std::sort(ids.begin(), ids.end());
      const Node& n = g.at(ids[0]);
      if (n.value || !cat.contains(n.label) || !cat.isStructural(n.label)) continue;
      mergeInto(g, cat, ids[0], ids[1]);
      merged = true;
      break;
    }
    if (!merged) return;
  }
}

LabelSet childNames(const MeaningGraph& g, const Catalog& cat, const std::string& id) {
  LabelSet out;
  for (const auto& c : g.children(id)) out.insert(componentName(g, cat, id, c));
  return out;
}

std::set<Violation> errorsOf(const ValidationReport& r) {
  std::set<Violation> out;
  for (const auto& v : r.items) {
    if (v.severity == Severity::Error) out.insert(v);
  }
  return out;
}

}  // namespace

void mergeEquivalent(MeaningGraph& g, const Catalog& cat, const std::string& keep, const std::string& drop) {
  g.at(keep);
  g.at(drop);
  if (keep == drop) return;
  bool viaEdge = detail::equivalenceClosure(g, keep).count(drop) > 0;
  bool viaCongruence = false;
  if (!viaEdge) {
    const Node& a = g.at(keep);
    const Node& b = g.at(drop);
    if (a.label == b.label && cat.contains(a.label) && cat.isStructural(a.label)) {
      viaCongruence = intensiveEq(g, cat, keep, drop);
    }
  }
  if (!viaEdge && !viaCongruence) {
    throw GraphError("merge", keep + " and " + drop + " are neither declared nor intensively equivalent");
  }
  if (childNames(g, cat, keep) != childNames(g, cat, drop)) {
    throw GraphError("merge", keep + " and " + drop + " do not share the same component labels");
  }
  ValidateOptions open{true};
  auto before = errorsOf(validate(g, cat, open));
  MeaningGraph snapshot = g;
  mergeInto(g, cat, keep, drop);
  for (const auto& v : errorsOf(validate(g, cat, open))) {
    if (!before.count(v)) {
      std::string msg = v.rule + " " + v.subject + ": " + v.message;
      g = std::move(snapshot);
      throw GraphError("merge", "merge would introduce a violation: " + msg);
    }
  }
}

std::size_t mergeAllEquivalent(MeaningGraph& g, const Catalog& cat) {
  std::size_t before = g.nodeCount();
  for (;;) {
    bool merged = false;
    for (const auto& ids : intensiveClasses(g, cat)) {
      if (ids.size() < 2) continue;
      const Node& n = g.at(ids[0]);
      if (n.value || !cat.contains(n.label) || !cat.isStructural(n.label)) continue;
      mergeInto(g, cat, ids[0], ids[1]);
      merged = true;
      break;
    }
    if (!merged) break;
  }
  return before - g.nodeCount();
}

}  // namespace semgraph
