#include <cstdint>
#include <cstdio>

#include "graph_rules.hpp"

namespace semgraph {

using detail::sameMeaning;

namespace {

struct Task {
  const ResolvedAtom* atom;
  const ResolvedAtom* parent;
};

void flatten(const std::vector<ResolvedAtom>& atoms, const ResolvedAtom* parent, std::vector<Task>& out) {
  for (const auto& a : atoms) {
    out.push_back({&a, parent});
    flatten(a.children, &a, out);
  }
}

// `super` reaches `sub` downward through specialization and equivalence edges.
bool specLinked(const MeaningGraph& g, const std::string& super, const std::string& sub) {
  return super != sub && detail::superClosure(g, sub).count(super) > 0;
}

std::set<std::string> subClosure(const MeaningGraph& g, const std::string& id) {
  std::set<std::string> seen{id};
  std::deque<std::string> work{id};
  while (!work.empty()) {
    std::string cur = work.front();
    work.pop_front();
    auto next = g.subs(cur);
    auto eq = g.equivalents(cur);
    next.insert(next.end(), eq.begin(), eq.end());
    for (const auto& s : next) {
      if (seen.insert(s).second) work.push_back(s);
    }
  }
  return seen;
}

std::vector<std::string> linkedCandidates(const MeaningGraph& g, const std::string& id, bool wantSubs) {
  std::set<std::string> out = wantSubs ? subClosure(g, id) : detail::superClosure(g, id);
  out.erase(id);
  return {out.begin(), out.end()};
}

class Matcher {
 public:
  Matcher(const MeaningGraph& g, const Catalog& cat, const std::vector<ResolvedAtom>& atoms) : g_(g), cat_(cat) {
    flatten(atoms, nullptr, tasks_);
  }

  std::vector<Binding> run(const Binding& seed) {
    Binding b = seed;
    step(0, b);
    return std::move(out_);
  }

 private:
  void step(std::size_t i, Binding& b) {
    if (i == tasks_.size()) {
      out_.push_back(b);
      return;
    }
    const ResolvedAtom& a = *tasks_[i].atom;
    std::vector<std::string> candidates;
    auto bound = b.find(a.var);
    if (bound != b.end()) {
      candidates = {bound->second};
    } else if (tasks_[i].parent) {
      candidates = g_.children(b.at(tasks_[i].parent->var));
    } else {
      for (const auto& [id, n] : g_.nodes()) candidates.push_back(id);
    }
    for (const auto& id : candidates) {
      const Node* n = g_.node(id);
      if (!n || !sameMeaning(cat_, n->label, a.label)) continue;
      if (tasks_[i].parent) {
        const auto ch = g_.children(b.at(tasks_[i].parent->var));
        if (std::find(ch.begin(), ch.end(), id) == ch.end()) continue;
      }
      bool fresh = bound == b.end();
      if (fresh) b[a.var] = id;
      link(i, a, id, b);
      if (fresh) b.erase(a.var);
    }
  }

  void link(std::size_t i, const ResolvedAtom& a, const std::string& id, Binding& b) {
    if (a.link == PatternAtom::Link::None) {
      step(i + 1, b);
      return;
    }
    bool atomIsSuper = a.link == PatternAtom::Link::LinkedIsSub;
    auto lb = b.find(a.linkedVar);
    if (lb != b.end()) {
      bool ok = atomIsSuper ? specLinked(g_, id, lb->second) : specLinked(g_, lb->second, id);
      if (ok) step(i + 1, b);
      return;
    }
    for (const auto& other : linkedCandidates(g_, id, atomIsSuper)) {
      b[a.linkedVar] = other;
      step(i + 1, b);
      b.erase(a.linkedVar);
    }
  }

  const MeaningGraph& g_;
  const Catalog& cat_;
  std::vector<Task> tasks_;
  std::vector<Binding> out_;
};

std::string fnv64hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string bindingKey(const Binding& b) {
  std::string k;
  for (const auto& [v, id] : b) k += v + "=" + id + ";";
  return k;
}

void instantiate(MeaningGraph& g, const Catalog& cat, const ComplementRule& rule, Binding b,
                 std::vector<std::string>& created) {
  std::string hash = fnv64hex(bindingKey(b));
  std::vector<Task> tasks;
  flatten(rule.head, nullptr, tasks);
  for (const auto& t : tasks) {
    if (b.count(t.atom->var)) continue;
    std::string id = "~c" + std::to_string(rule.index) + "_" + hash + "_" + t.atom->var;
    if (const Node* existing = g.node(id); existing && !(existing->label == t.atom->label)) {
      throw GraphError("chase-collision", "fresh id " + id + " already used by " + existing->label.str());
    }
    g.insertNode(Node{id, t.atom->label, std::nullopt});
    created.push_back(id);
    b[t.atom->var] = id;
  }
  auto specEdge = [&](const std::string& super, const std::string& sub) {
    auto style = cat.styleBetween(g.at(sub).label, g.at(super).label);
    g.insertEdge(Edge{EdgeKind::Specialization, super, sub, style.value_or(SpecStyle::Normal)});
  };
  for (const auto& t : tasks) {
    const std::string& id = b.at(t.atom->var);
    if (t.parent) g.insertEdge(Edge{EdgeKind::Composition, b.at(t.parent->var), id, SpecStyle::Normal});
    if (t.atom->link == PatternAtom::Link::None) continue;
    auto lb = b.find(t.atom->linkedVar);
    if (lb == b.end()) {
      throw GraphError("chase-unbound", "variable $" + t.atom->linkedVar + " has no meaning to instantiate");
    }
    if (t.atom->link == PatternAtom::Link::LinkedIsSub) {
      specEdge(id, lb->second);
    } else {
      specEdge(lb->second, id);
    }
  }
}

}  // namespace

std::vector<Binding> matchPattern(const MeaningGraph& g, const Catalog& cat, const std::vector<ResolvedAtom>& atoms,
                                  const Binding& seed) {
  return Matcher(g, cat, atoms).run(seed);
}

ChaseResult chase(const MeaningGraph& input, const Catalog& cat, ChaseOptions options) {
  ChaseResult r;
  r.graph = input;
  std::set<std::pair<std::size_t, std::string>> fired;
  for (int pass = 0; pass <= options.maxRounds; ++pass) {
    bool any = false;
    for (const auto& rule : cat.complements()) {
      for (const auto& b : matchPattern(r.graph, cat, rule.body)) {
        if (fired.count({rule.index, bindingKey(b)})) continue;
        if (!matchPattern(r.graph, cat, rule.head, b).empty()) continue;
        if (pass == options.maxRounds) {
          throw GraphError("chase-nontermination",
                           "chase did not reach a fixpoint within " + std::to_string(options.maxRounds) + " rounds");
        }
        instantiate(r.graph, cat, rule, b, r.created);
        fired.insert({rule.index, bindingKey(b)});
        any = true;
      }
    }
    if (!any) {
      r.rounds = pass;
      return r;
    }
  }
  r.rounds = options.maxRounds;
  return r;
}

}  // namespace semgraph
