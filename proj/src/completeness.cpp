#include "semgraph/completeness.hpp"

#include <sstream>

#include "graph_rules.hpp"

namespace semgraph {

const char* to_string(Completeness c) {
  switch (c) {
    case Completeness::Complete: return "complete";
    case Completeness::Incomplete: return "incomplete";
    case Completeness::Undetermined: return "undetermined";
  }
  return "?";
}

namespace {

// Owner node, the composition chain down to the context, and one context child per required name.
MeaningGraph skeleton(const Obligation& ob) {
  MeaningGraph g;
  std::vector<MeaningLabel> chain{ob.context};
  while (!(chain.back() == ob.owner) && !chain.back().isRoot()) chain.push_back(*chain.back().parent());
  std::string prev;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    std::string id = it->str();
    g.insertNode(Node{id, *it, std::nullopt});
    if (!prev.empty()) g.insertEdge(Edge{EdgeKind::Composition, prev, id});
    prev = id;
  }
  for (const auto& name : ob.occurrence) {
    const MeaningLabel& l = ob.contextComponent.at(name);
    std::string id = l.str();
    if (g.hasNode(id)) id += "#" + name;
    g.insertNode(Node{id, l, std::nullopt});
    g.insertEdge(Edge{EdgeKind::Composition, ob.context.str(), id});
  }
  return g;
}

std::size_t skeletonSize(const Obligation& ob) {
  return ob.context.path().size() - ob.owner.path().size() + 1 + ob.occurrence.size();
}

}  // namespace

CompletenessReport checkCompleteness(const Catalog& cat, const MeaningLabel& meaning, std::size_t bound) {
  CompletenessReport rep;
  rep.meaning = meaning;
  rep.bound = bound;
  for (auto& ob : computeObligations(cat, meaning)) {
    ObligationResult r;
    r.rule = coveringRule(cat, ob);
    if (skeletonSize(ob) > bound) {
      r.verdict = r.rule ? Completeness::Complete : Completeness::Undetermined;
      r.detail = "skeleton exceeds bound " + std::to_string(bound);
    } else {
      MeaningGraph sk = skeleton(ob);
      try {
        auto chased = chase(sk, cat);
        auto dangling = detail::checkObligations(chased.graph, cat, {ob});
        if (dangling.empty()) {
          r.verdict = Completeness::Complete;
          r.detail = "discharged after " + std::to_string(chased.created.size()) + " chase insertions";
        } else {
          r.verdict = Completeness::Incomplete;
          r.detail = dangling.front().subject + ": " + dangling.front().message;
          if (!rep.witness || rep.witness->nodeCount() > sk.nodeCount()) rep.witness = sk;
        }
      } catch (const GraphError& e) {
        r.verdict = Completeness::Undetermined;
        r.detail = e.what();
      }
    }
    r.obligation = std::move(ob);
    rep.obligations.push_back(std::move(r));
  }
  for (const auto& r : rep.obligations) {
    if (r.verdict == Completeness::Incomplete) {
      rep.verdict = Completeness::Incomplete;
      break;
    }
    if (r.verdict == Completeness::Undetermined) rep.verdict = Completeness::Undetermined;
  }
  return rep;
}

std::vector<CompletenessReport> checkAllCompleteness(const Catalog& cat, std::size_t bound) {
  std::set<MeaningLabel> owners;
  for (const auto& ob : computeAllObligations(cat)) owners.insert(ob.owner);
  std::vector<CompletenessReport> out;
  for (const auto& o : owners) out.push_back(checkCompleteness(cat, o, bound));
  return out;
}

std::string CompletenessReport::text() const {
  std::ostringstream os;
  os << meaning.str() << ": " << to_string(verdict) << "\n";
  for (const auto& r : obligations) {
    os << "  " << to_string(r.verdict) << " " << r.obligation.describe();
    if (r.rule) os << " [rule " << *r.rule << "]";
    if (!r.detail.empty()) os << " (" << r.detail << ")";
    os << "\n";
  }
  return os.str();
}

}  // namespace semgraph
